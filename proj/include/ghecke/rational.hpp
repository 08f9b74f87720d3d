#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghecke {

// All arithmetic in this library is exact. Rat is always kept canonical
// (lowest terms, sign on the numerator), which gmpxx guarantees for results
// of arithmetic; parsed values are canonicalized explicitly.
using Rat = mpq_class;

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses "p", "-p", "p/q". Throws input_error on malformed input or q = 0.
Rat rat_parse(const std::string& s);

// Canonical form: "0", "-3", "2/5", "-7/3".
std::string rat_str(const Rat& x);

bool rat_is_int(const Rat& x);
long rat_to_long(const Rat& x);  // requires rat_is_int and fits in long

// True if x is the square of a rational; if so *root is the non-negative root.
bool rat_sqrt(const Rat& x, Rat* root);

std::size_t hash_combine(std::size_t h, std::size_t v);
std::size_t hash_int_vec(const std::vector<int>& v);

std::string rat_vec_str(const std::vector<Rat>& v);

}  // namespace ghecke
