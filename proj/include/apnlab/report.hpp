#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "apnlab/analysis.hpp"
#include "apnlab/equivalence.hpp"
#include "apnlab/gf2m.hpp"

namespace apnlab {

using Json = nlohmann::ordered_json;

std::string hex_value(std::uint32_t v);

// Every report names its conventions so the numbers are reproducible:
// reduction polynomial, pair encoding, and the Walsh multiset ranges.
Json convention_json(const Field& field);

Json differential_json(const DifferentialSpectrum& s);
Json walsh_json(const WalshReport& r);
Json image_json(const ImageReport& r);
Json class_matrix_json(const ClassMatrix& c);

// "value,count" rows, keys ascending.
void write_spectrum_csv(std::ostream& os,
                        const std::map<std::uint32_t, std::uint64_t>& counts);

// Witness as a text block of two n x n bit-matrices (rows of 0/1 digits),
// certifying L*F(x) = G(M*x).
void write_witness(std::ostream& os, const LinearEquivalence& w);

}  // namespace apnlab
