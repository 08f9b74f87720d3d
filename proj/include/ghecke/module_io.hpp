#pragma once

#include "ghecke/hecke.hpp"

#include <iosfwd>

namespace ghecke {

// Canonical module file:
// {"datum": {"family": "A", "rank": 2, "k": ["1"]},
//  "dim": 1,
//  "t": {"s1": [["-1"]], "s2": [["-1"]]},
//  "v": {"a1": [["-1"]], "a2": [["-1"]]},
//  "label": "steinberg"}
// Entries are lowest-terms rational strings; "t" carries one key per simple
// reflection of the support, row-major matrices.

std::string module_to_json(const HModule& x);
void write_module_file(const HModule& x, const std::string& path);

struct DatumSpec {
    char family;
    int rank;
    std::vector<Rat> k;
};

DatumSpec datum_spec_of_json(const std::string& text);
// Parses the module against a caller-owned datum (must match the file's datum block).
HModule module_of_json(const std::string& text, const RootDatum& rd);
DatumSpec read_datum_spec(const std::string& path);
HModule read_module_file(const std::string& path, const RootDatum& rd);

bool same_datum(const DatumSpec& a, const DatumSpec& b);
std::string datum_to_json(const RootDatum& rd);

}  // namespace ghecke
