// Classifies one point of the two-mode family through both routes: the
// closed-form invariants and the numeric NC symplectic spectrum.

#include <cstdio>

#include "ncps/ncps.hpp"

int main() {
    const ncps::MNPair mn = ncps::region_map_mn(0.5, false);
    for (double eta : {0.0, 0.5, 0.8, 1.2}) {
        const auto params = ncps::FamilyParams::make(mn.m, mn.n, 0.0, eta);
        const auto closed = ncps::closed_form_invariants(params);
        const auto numeric = ncps::classify_family(params);
        std::printf("eta=%.2f  nu-=%.9f (%.9f)  nu-'=%.9f (%.9f)  %s\n", eta, closed.nu_minus,
                    numeric.nu_minus, closed.nu_minus_prime, numeric.nu_minus_prime,
                    std::string(ncps::to_string(numeric.verdict)).c_str());
    }
}
