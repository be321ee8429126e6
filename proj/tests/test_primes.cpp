#include <doctest.h>

#include <pam/path_dict.hpp>
#include <pam/primes.hpp>

#include <random>
#include <sstream>

#include "oracles.hpp"

using pam::Path;
using pam::PathDict;
using pam::PrimeStream;

TEST_CASE("prime stream issues primes in order") {
    PrimeStream s;
    CHECK(s.next() == 2);
    CHECK(s.next() == 3);
    CHECK(s.next() == 5);
    CHECK(s.next() == 7);
    CHECK(s.issued() == 4);
}

TEST_CASE("prime stream matches an independent sieve deep into the sequence") {
    auto expected = oracle::sieve_primes(200000);
    REQUIRE(expected.size() > 10000);
    PrimeStream s;
    for (std::size_t i = 0; i < 10000; ++i) CHECK(s.next() == expected[i]);
    CHECK(s.nth(24) == 97);
}

TEST_CASE("skip discards without issuing") {
    PrimeStream s;
    s.skip(4);
    CHECK(s.next() == 11);
}

TEST_CASE("relation dictionary reserves 2 and numbers relations in index order") {
    auto d = PathDict::for_relations(3);
    CHECK(d.hop() == 1);
    CHECK(d.prime_of({0}) == 3);
    CHECK(d.prime_of({1}) == 5);
    CHECK(d.prime_of({2}) == 7);
    CHECK(!d.find_prime(2).has_value());
}

TEST_CASE("exhaustive dictionary enumerates chains lexicographically from 2") {
    auto d = PathDict::exhaustive(3, 3);
    CHECK(d.size() == 27);
    // chain ranks: (0,0,1) is second -> 3, (0,2,1) is eighth -> 19
    CHECK(d.prime_of({0, 0, 1}) == 3);
    CHECK(d.prime_of({0, 2, 1}) == 19);
    CHECK(d.prime_of({0, 0, 0}) == 2);
    CHECK(d.path_at(*d.find_prime(19)) == Path{0, 2, 1});
}

TEST_CASE("exhaustive dictionary refuses to blow past its entry cap") {
    CHECK_THROWS_AS(PathDict::exhaustive(8, 40), pam::ResourceLimitError);
}

TEST_CASE("decode factors a value into chain indices with multiplicity") {
    auto d = PathDict::exhaustive(3, 3);
    auto factors = d.decode<std::uint64_t>(57);
    REQUIRE(factors.size() == 2);
    CHECK(d.path_at(factors[0]) == Path{0, 0, 1});
    CHECK(d.path_at(factors[1]) == Path{0, 2, 1});

    auto square = d.decode<std::uint64_t>(19 * 19);
    REQUIRE(square.size() == 2);
    CHECK(square[0] == square[1]);
}

TEST_CASE("decode rejects values with foreign factors, naming the cofactor") {
    auto d = PathDict::for_relations(4);
    CHECK_THROWS_WITH_AS(d.decode<std::uint64_t>(1046), // 2 * 523, no odd dict prime divides it
                         doctest::Contains("1046"), pam::DecodeError);
    CHECK_THROWS_AS(d.decode<std::uint64_t>(1), pam::ContractViolation);
}

TEST_CASE("assign is idempotent and rejects wrong-length chains") {
    PathDict d(2);
    PrimeStream s;
    auto a = d.assign({1, 0}, s);
    auto b = d.assign({1, 0}, s);
    CHECK(a == b);
    CHECK(d.size() == 1);
    CHECK(s.issued() == 1);
    CHECK_THROWS_AS(d.assign({1}, s), pam::ContractViolation);
}

TEST_CASE("dictionary round-trips through its text form") {
    auto d = PathDict::exhaustive(2, 4);
    std::ostringstream out;
    d.save(out);
    std::istringstream in(out.str());
    auto back = PathDict::load(in);
    REQUIRE(back.size() == d.size());
    for (std::uint32_t i = 0; i < d.size(); ++i) {
        CHECK(back.prime_at(i) == d.prime_at(i));
        CHECK(back.path_at(i) == d.path_at(i));
    }
}

TEST_CASE("load reports malformed lines by number") {
    std::istringstream in("2\t0,0\n9\t0\n");
    CHECK_THROWS_WITH_AS(PathDict::load(in, "dict.tsv"),
                         doctest::Contains("dict.tsv:2"), pam::ParseError);
    std::istringstream descending("5\t0\n3\t1\n");
    CHECK_THROWS_AS(PathDict::load(descending), pam::ParseError);
}

TEST_CASE("random chain products decode back to the same multiset") {
    auto d = PathDict::exhaustive(2, 5);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(d.size() - 1));
    for (int round = 0; round < 200; ++round) {
        std::vector<std::uint32_t> chosen;
        std::uint64_t product = 1;
        int count = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < count; ++i) {
            auto idx = pick(rng);
            chosen.push_back(idx);
            product *= d.prime_at(idx);
        }
        std::sort(chosen.begin(), chosen.end());
        auto decoded = d.decode<std::uint64_t>(product);
        CHECK(decoded == chosen);
    }
}
