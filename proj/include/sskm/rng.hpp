#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sskm {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed for an independent stream identified by a path of ids below a master
// seed, e.g. derive_seed(master, {cell, trial, stream}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

}  // namespace sskm
