// Prints the bound levels of the nine families at their desk parameters.

#include <cstdio>
#include <utility>
#include <vector>

#include "specbound/specbound.hpp"

int main() {
    using namespace specbound;
    const UnitsConfig units{};
    const std::vector<PotentialSpec> cases{GeneralizedMorse{100.0, 20.0, 1.0}, Mie{5.0, 1.0},
                                           KratzerFues{10.0, 1.0},            Coulomb{1.0},
                                           Pseudoharmonic{2.0, 1.0},          NoncentralRadial{-1.0, 0.0},
                                           DeformedRosenMorse{4.0, 8.0, 0.5, 1.0}, WoodsSaxon{5.0, 10.0, 1.0},
                                           PoschlTeller{10.0, 1.0, 1.0}};
    std::printf("%-20s %3s %22s %10s\n", "family", "n", "energy", "branch");
    for (const auto& spec : cases) {
        for (const auto& st : spectrum(spec, 0, units, 3)) {
            std::printf("%-20s %3d %22.15g %10s\n", std::string(family_name(spec)).c_str(), st.n, st.energy,
                        std::string(to_string(st.branch())).c_str());
        }
    }
    return 0;
}
