#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "latd/codes.hpp"
#include "latd/lattice.hpp"

namespace latd {

using CatalogEntry = std::variant<Lattice, LinearCode>;

/// Named lattices and codes: a:n, d:n, e6, e7, e8, zn:n, dplus:n, hamming8,
/// golay24, ternary_golay12, o23, leech, and "X+Y" for orthogonal sums.
CatalogEntry catalog(std::string_view name);
/// As catalog(), applying Construction A to codes.
Lattice catalog_lattice(std::string_view name);
std::vector<std::string> catalog_names();

LinearCode hamming8();
LinearCode golay24();
LinearCode ternary_golay12();

/// (-3, 1^23) in the ambient coordinates of L(golay24).
std::vector<std::int64_t> leech_glue_vector();
Lattice leech();
/// O_23 rebuilt from the Leech lattice: project { l : (l, v) even } to v^perp
/// for a minimal vector v. Used to produce and cross-check data/o23.gram.
Lattice o23_from_leech();

/// Reads dir/file after checking its hash against dir/MANIFEST.sha256.
Lattice load_verified_gram(const std::string& dir, const std::string& file);

/// Directory holding o23.gram and MANIFEST.sha256; LATD_DATA_DIR overrides.
std::string data_dir();
std::string sha256_hex(std::string_view bytes);

}  // namespace latd
