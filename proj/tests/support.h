#pragma once

#include <cstdint>
#include <random>

#include "xtalk/netlist.h"
#include "xtalk/matrix.h"
#include "xtalk/rational.h"

namespace xtalk::fixtures {

/// Uniform p/q with q in [1, max_den] and p/q in [lo, hi].
inline Rational random_rational(std::mt19937_64 &rng, int64_t lo, int64_t hi, int64_t max_den = 97) {
    std::uniform_int_distribution<int64_t> den(1, max_den);
    int64_t q = den(rng);
    std::uniform_int_distribution<int64_t> num(lo * q, hi * q);
    return Rational(num(rng), q);
}

/// Strictly positive variant.
inline Rational random_positive(std::mt19937_64 &rng, int64_t hi, int64_t max_den = 97) {
    Rational r = random_rational(rng, 0, hi, max_den);
    while (r.sign() <= 0) {
        r = random_rational(rng, 0, hi, max_den);
    }
    return r;
}

// Closed form of C_r for the direct pair with equal islands, frozen as the oracle.
inline Matrix direct_pair_reference(const Rational &cd, const Rational &cq, const Rational &cg, const Rational &cc1,
                             const Rational &cc2) {
    Rational k = cc1 * (cd + 4 * cg) + 4 * cg * (cg + cc2) + cd * (2 * cg + cc2);
    Rational dd = 4 * cd * cg * (cc1 + cg + cc2) / k;
    Rational d1 = -(cd * cg * (cc1 + 2 * cg + 3 * cc2)) / k;
    Rational d2 = -(cd * cg * (cc1 - cc2)) / k;
    Rational q12 = -(cg * (cd + cg) * cc2 + cc1 * (cg * cg + 4 * cc2 * cg + cd * cc2)) / k;
    Rational q1 = (cd * (2 * cg * cg + (2 * cq + 3 * cc2) * cg + cq * cc2) +
                   cg * (2 * cg * cg + (4 * cq + 3 * cc2) * cg + 4 * cq * cc2) + cc1 * cd * (cg + cq + cc2) +
                   cc1 * cg * (3 * cg + 4 * (cq + cc2))) /
                  k;
    Rational q2 = (cd * (cg * cg + (2 * cq + cc2) * cg + cq * cc2) +
                   cg * (2 * cg * cg + (4 * cq + 3 * cc2) * cg + 4 * cq * cc2) + cc1 * cd * (cg + cq + cc2) +
                   cc1 * cg * (3 * cg + 4 * (cq + cc2))) /
                  k;
    return Matrix({"d", "1m", "2m"}, {dd, d1, d2, d1, q1, q12, d2, q12, q2});
}


/// Random connected-to-ground circuit: grounded and floating devices, random couplers, one drive.
inline Netlist random_circuit(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> devices(1, 4);
    std::bernoulli_distribution coin(0.5);
    std::vector<NodeId> nodes{"d"};
    std::vector<Capacitor> caps;
    std::vector<Junction> junctions;
    auto cap = [&] { return random_positive(rng, 120, 40); };
    int count = devices(rng);
    for (int i = 0; i < count; ++i) {
        std::string a = "n" + std::to_string(i) + "a";
        nodes.push_back(a);
        caps.push_back({a, "gnd", cap()});
        if (coin(rng)) {
            std::string b = "n" + std::to_string(i) + "b";
            nodes.push_back(b);
            caps.push_back({b, "gnd", cap()});
            caps.push_back({a, b, cap()});
            junctions.push_back({a, b, std::nullopt, "q" + std::to_string(i)});
        } else {
            junctions.push_back({a, "gnd", std::nullopt, ""});
        }
    }
    caps.push_back({"d", nodes[1 + std::uniform_int_distribution<size_t>(0, nodes.size() - 2)(rng)], cap()});
    std::bernoulli_distribution couple(0.35);
    for (size_t i = 1; i < nodes.size(); ++i) {
        for (size_t k = i + 1; k < nodes.size(); ++k) {
            if (couple(rng)) {
                caps.push_back({nodes[i], nodes[k], random_positive(rng, 10, 40)});
            }
        }
    }
    return Netlist(std::move(nodes), std::move(caps), std::move(junctions), {{"d", "d"}});
}

}  // namespace xtalk::fixtures
