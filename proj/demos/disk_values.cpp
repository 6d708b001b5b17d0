// Evaluate the two-, three- and four-disk configurations for a few labelings,
// once from the closed forms and once from the spin network built from the
// packing geometry.
#include <cstdio>

#include "skeinlab/apollonian.hpp"
#include "skeinlab/reduction.hpp"
#include "skeinlab/state_sum.hpp"

using namespace skeinlab;

int main() {
    std::printf("%-14s %12s %12s %12s\n", "labels", "closed form", "recoupling", "state sum");
    auto row = [](const char* name, const CirclePacking& p, const Rational& closed) {
        auto net = packing_to_network(p).network;
        std::printf("%-14s %12s %12s %12s\n", name, closed.to_string().c_str(),
                    evaluate_recoupling(net).to_string().c_str(), evaluate_brute(net).to_string().c_str());
    };
    row("(1,1)", two_disk_configuration(1, 1), eval_two(1, 1));
    row("(1,2)", two_disk_configuration(1, 2), eval_two(1, 2));
    row("(1,3)", two_disk_configuration(1, 3), eval_two(1, 3));
    row("(1,1,1)", three_disk_configuration(1, 1, 1), eval_three(1, 1, 1));
    row("(1,2,2)", three_disk_configuration(1, 2, 2), eval_three(1, 2, 2));
    row("(1,1,1,1)", four_disk_configuration(1, 1, 1, 1), eval_four(1, 1, 1, 1));
    row("(2,1,0,3)", four_disk_configuration(2, 1, 0, 3), eval_four(2, 1, 0, 3));
    row("(2,2,1,1)", four_disk_configuration(2, 2, 1, 1), eval_four(2, 2, 1, 1));
}
