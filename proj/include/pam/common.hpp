#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pam {

using NodeId = std::uint32_t;
using RelId  = std::uint32_t;

// Cell values in lossless matrices are products of many primes and outgrow
// any fixed width; everything big-number goes through this alias.
using BigInt = boost::multiprecision::cpp_int;

// A relation chain of fixed length k (the hop order of the dictionary it
// lives in). Relations are stored as indices into a RelGraph's dictionary.
using Path = std::vector<RelId>;

} // namespace pam
