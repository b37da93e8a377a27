// Minimal library walkthrough: the cuspidal-type block of GL_2 over a field
// with q = 5 and its journey to the Hecke descriptor.
//
//   g++ -std=c++20 -I ../include -I ../vendor block_walkthrough.cpp

#include <iostream>

#include "blockdual/json_io.hpp"

using namespace blockdual;

int main() {
    ResidueDatum base = residue_datum_from_q(5);
    GLTypeGroup gl2 = make_gl(2, base);

    // the parameter with character orbit {8, 16} in Z/24
    InertialParam phi = make_param(gl2, InertiaKind::full(), {{{canonicalize(2, 8, base), 1}}});
    std::cout << "parameter:   " << pairs_to_json(phi).dump() << "\n";
    std::cout << "centralizer: " << to_json(centralizer_shape(phi)).dump() << "\n";
    std::cout << "G_phi:       " << to_json(unipotent_group(phi)).dump() << "\n";
    std::cout << "hecke:       " << to_json(hecke_descriptor(phi)).dump() << "\n";

    UnipotentFactorization fact = strict_unipotent_factorization(phi);
    std::cout << "factorization chain: " << to_json(fact.hom)["chain"].dump() << "\n";

    for (const ReductionStep& step : reduction_plan(trivial_param(fact.group), fact.hom))
        std::cout << "plan step: " << to_json(step).dump() << "\n";

    // fusing all six blocks of GL_2 over q = 3 modulo ell = 2
    GLTypeGroup gl2_q3 = make_gl(2, residue_datum_from_q(3));
    auto atlas = enumerate_blocks(gl2_q3, InertiaKind::full());
    auto classes = fuse_blocks(atlas, 2);
    std::cout << atlas.size() << " blocks fuse into " << classes.size() << " class(es)\n";
    return 0;
}
