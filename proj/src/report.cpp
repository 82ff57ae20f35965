#include "apnlab/report.hpp"

#include <ostream>

namespace apnlab {

std::string hex_value(std::uint32_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    do {
        s.insert(s.begin(), digits[v & 0xf]);
        v >>= 4;
    } while (v);
    return "0x" + s;
}

Json convention_json(const Field& field) {
    Json j;
    j["field"] = "F_" + std::to_string(field.order());
    j["reduction_poly"] = hex_value(field.reduction());
    j["pair_encoding"] = "x = low m bits, y = high m bits; outputs packed the same way";
    j["walsh"] = "W(b,a) multiset over b != 0 and a over all of F_2^n; "
                 "component functions Tr(b1*F1) + Tr(b2*F2)";
    j["ortho_pairing"] = "<(b1,b2),(y1,y2)> = Tr(b1*y1) + Tr(b2*y2)";
    return j;
}

namespace {

Json counts_json(const std::map<std::uint32_t, std::uint64_t>& counts) {
    Json j = Json::object();
    for (const auto& [v, c] : counts) j[std::to_string(v)] = c;
    return j;
}

}  // namespace

Json differential_json(const DifferentialSpectrum& s) {
    Json j;
    j["delta"] = s.delta;
    j["apn"] = s.delta == 2;
    j["counts"] = counts_json(s.counts);
    return j;
}

Json walsh_json(const WalshReport& r) {
    Json j;
    j["n"] = r.n;
    j["classical"] = r.classical;
    j["parseval_ok"] = r.parseval_ok;
    j["counts"] = counts_json(r.counts);
    return j;
}

Json image_json(const ImageReport& r) {
    Json j;
    j["image_size"] = r.image_size;
    j["three_to_one"] = r.three_to_one;
    j["preimage_counts"] = counts_json(r.preimage_counts);
    return j;
}

Json class_matrix_json(const ClassMatrix& c) {
    Json j;
    j["m"] = c.m;
    j["ks"] = c.ks;
    j["num_classes"] = c.num_classes;
    Json reps = Json::object();
    for (const auto& [k, alpha] : c.rep_alpha) {
        Json r;
        r["alpha"] = hex_value(alpha);
        r["ortho_derivative_spectrum"] = differential_json(c.rep_ods.at(k));
        reps[std::to_string(k)] = r;
    }
    j["class_representatives"] = reps;
    Json rows = Json::array();
    for (std::size_t i = 0; i < c.ks.size(); ++i) {
        Json row = Json::array();
        for (std::size_t jx = 0; jx < c.ks.size(); ++jx) {
            const auto& v = c.verdicts[i][jx];
            Json e;
            switch (v.status) {
                case VerdictStatus::EquivalentWithWitness:
                    e["status"] = "equivalent-with-witness";
                    break;
                case VerdictStatus::InequivalentByInvariant:
                    e["status"] = "inequivalent-by-invariant";
                    break;
                case VerdictStatus::Undecided:
                    e["status"] = "undecided";
                    break;
            }
            e["detail"] = v.detail;
            row.push_back(e);
        }
        rows.push_back(row);
    }
    j["verdicts"] = rows;
    return j;
}

void write_spectrum_csv(std::ostream& os,
                        const std::map<std::uint32_t, std::uint64_t>& counts) {
    os << "value,count\n";
    for (const auto& [v, c] : counts) os << v << ',' << c << '\n';
}

void write_witness(std::ostream& os, const LinearEquivalence& w) {
    os << "ELWITNESS v1 n=" << w.input.n << '\n';
    auto dump = [&](const char* name, const BitMatrix& M) {
        os << name << '\n';
        for (unsigned i = 0; i < M.n; ++i) {
            for (unsigned j = 0; j < M.n; ++j) os << ((M.rows[i] >> j) & 1u);
            os << '\n';
        }
    };
    dump("M", w.input);
    dump("L", w.output);
}

}  // namespace apnlab
