#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pam/common.hpp"
#include "pam/errors.hpp"
#include "pam/primes.hpp"

namespace pam {

struct PathDictEntry {
    std::uint64_t prime;
    Path path;
};

/// Bijection between relation chains of a fixed length and primes. Entry
/// indices are assignment order; because primes come off a stream in
/// ascending order, index order and ascending-prime order coincide.
class PathDict {
public:
    explicit PathDict(std::size_t hop) : hop_(hop) {
        if (hop_ == 0) throw ContractViolation("path dictionary hop must be >= 1");
    }

    std::size_t hop() const { return hop_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<PathDictEntry>& entries() const { return entries_; }
    const PathDictEntry& entry(std::uint32_t index) const { return entries_.at(index); }
    std::uint64_t prime_at(std::uint32_t index) const { return entries_.at(index).prime; }
    const Path& path_at(std::uint32_t index) const { return entries_.at(index).path; }

    std::optional<std::uint32_t> find(const Path& path) const {
        auto it = by_path_.find(path);
        if (it == by_path_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<std::uint32_t> find_prime(std::uint64_t prime) const {
        auto it = by_prime_.find(prime);
        if (it == by_prime_.end()) return std::nullopt;
        return it->second;
    }

    std::uint64_t prime_of(const Path& path) const {
        auto idx = find(path);
        if (!idx) throw ContractViolation("path has no prime assigned");
        return entries_[*idx].prime;
    }

    // Give the chain a prime if it has none yet; returns its entry index either way.
    std::uint32_t assign(const Path& path, PrimeStream& stream) {
        if (path.size() != hop_)
            throw ContractViolation("chain length " + std::to_string(path.size()) +
                                    " in a " + std::to_string(hop_) + "-hop dictionary");
        auto it = by_path_.find(path);
        if (it != by_path_.end()) return it->second;
        std::uint64_t p = stream.next();
        auto index = static_cast<std::uint32_t>(entries_.size());
        entries_.push_back({p, path});
        by_path_.emplace(path, index);
        by_prime_.emplace(p, index);
        return index;
    }

    // Factor a cell value over this dictionary's primes. Returns entry
    // indices with multiplicity, ascending by prime.
    template <class V>
    std::vector<std::uint32_t> decode(V value) const {
        if (value < 2) throw ContractViolation("cannot decode cell value < 2");
        std::vector<std::uint32_t> factors;
        for (const auto& [prime, index] : by_prime_) {
            V p = static_cast<V>(prime);
            while (value % p == 0) {
                factors.push_back(index);
                value /= p;
            }
            if (value == 1) break;
        }
        if (value != 1) {
            std::ostringstream os;
            os << "cofactor " << value << " is not a product of dictionary primes";
            throw DecodeError(os.str());
        }
        return factors;
    }

    // One-hop dictionary for relations 0..n-1 in index order. 2 stays
    // unassigned so every one-hop cell value is odd.
    static PathDict for_relations(std::size_t n) {
        PathDict d(1);
        PrimeStream stream;
        stream.skip(1);
        for (std::size_t r = 0; r < n; ++r)
            d.assign({static_cast<RelId>(r)}, stream);
        return d;
    }

    // Every length-hop chain over num_relations relations, lexicographic
    // order, primes from 2 up. Size is num_relations^hop, hence the cap.
    static PathDict exhaustive(std::size_t hop, std::size_t num_relations,
                               std::size_t max_entries = 1u << 22) {
        PathDict d(hop);
        if (num_relations == 0) return d;
        std::size_t total = 1;
        for (std::size_t i = 0; i < hop; ++i) {
            if (total > max_entries / num_relations + 1)
                throw ResourceLimitError("exhaustive " + std::to_string(hop) +
                                         "-hop dictionary over " + std::to_string(num_relations) +
                                         " relations exceeds cap of " + std::to_string(max_entries));
            total *= num_relations;
        }
        if (total > max_entries)
            throw ResourceLimitError("exhaustive " + std::to_string(hop) +
                                     "-hop dictionary over " + std::to_string(num_relations) +
                                     " relations exceeds cap of " + std::to_string(max_entries));
        PrimeStream stream;
        Path chain(hop, 0);
        for (std::size_t count = 0; count < total; ++count) {
            d.assign(chain, stream);
            for (std::size_t pos = hop; pos-- > 0;) {
                if (++chain[pos] < num_relations) break;
                chain[pos] = 0;
            }
        }
        return d;
    }

    void save(std::ostream& out) const {
        for (const auto& e : entries_) {
            out << e.prime << '\t';
            for (std::size_t i = 0; i < e.path.size(); ++i) {
                if (i) out << ',';
                out << e.path[i];
            }
            out << '\n';
        }
    }

    void save(const std::string& file) const {
        std::ofstream out(file);
        if (!out) throw Error("cannot open " + file + " for writing");
        save(out);
    }

    static PathDict load(std::istream& in, const std::string& source = "<stream>") {
        std::optional<PathDict> dict;
        std::uint64_t last_prime = 0;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto where = source + ":" + std::to_string(lineno);
            auto tab = line.find('\t');
            if (tab == std::string::npos) throw ParseError(where + ": expected <prime>\\t<chain>");
            std::uint64_t prime = 0;
            try {
                prime = std::stoull(line.substr(0, tab));
            } catch (const std::exception&) {
                throw ParseError(where + ": bad prime '" + line.substr(0, tab) + "'");
            }
            if (prime <= last_prime)
                throw ParseError(where + ": primes must be strictly ascending");
            last_prime = prime;
            Path path;
            std::stringstream rels(line.substr(tab + 1));
            std::string tok;
            while (std::getline(rels, tok, ',')) {
                try {
                    path.push_back(static_cast<RelId>(std::stoul(tok)));
                } catch (const std::exception&) {
                    throw ParseError(where + ": bad relation id '" + tok + "'");
                }
            }
            if (path.empty()) throw ParseError(where + ": empty chain");
            if (!dict) dict.emplace(path.size());
            if (path.size() != dict->hop())
                throw ParseError(where + ": chain length differs from earlier lines");
            auto index = static_cast<std::uint32_t>(dict->entries_.size());
            dict->entries_.push_back({prime, path});
            if (!dict->by_path_.emplace(path, index).second)
                throw ParseError(where + ": duplicate chain");
            dict->by_prime_.emplace(prime, index);
        }
        if (!dict) throw ParseError(source + ": empty dictionary");
        return std::move(*dict);
    }

    static PathDict load_file(const std::string& file) {
        std::ifstream in(file);
        if (!in) throw Error("cannot open " + file);
        return load(in, file);
    }

private:
    std::size_t hop_;
    std::vector<PathDictEntry> entries_;
    std::map<Path, std::uint32_t> by_path_;
    std::map<std::uint64_t, std::uint32_t> by_prime_;
};

} // namespace pam
