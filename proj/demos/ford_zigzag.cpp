// Print the tangency labels of the Ford arrangement along the baseline, along
// the 0/1 disk, and along the zigzag through ratios of Fibonacci numbers.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "skeinlab/apollonian.hpp"

using namespace skeinlab;

int main(int argc, char** argv) {
    long long q_max = argc > 1 ? std::atoll(argv[1]) : 13;
    std::vector<FordFraction> fr;
    auto net = packing_to_network(generate_ford(q_max, &fr)).network;
    auto label = [&](int i, int j) -> std::string {
        std::string id = "d" + std::to_string(std::min(i, j)) + "-d" + std::to_string(std::max(i, j));
        for (const auto& e : net.edges())
            if (e.id == id) return std::to_string(e.label);
        return "-";
    };
    auto index = [&](long long p, long long q) {
        for (std::size_t i = 0; i < fr.size(); ++i)
            if (fr[i].p == p && fr[i].q == q) return static_cast<int>(i + 1);
        return -1;
    };

    std::printf("disk     baseline  with 0/1\n");
    for (std::size_t i = 0; i < fr.size(); ++i) {
        int d = static_cast<int>(i + 1);
        std::printf("%3lld/%-4lld %8s  %8s\n", fr[i].p, fr[i].q, label(0, d).c_str(),
                    d == index(0, 1) ? "" : label(index(0, 1), d).c_str());
    }

    std::printf("\nzigzag:");
    long long a = 0, b = 1, c = 1, d = 1;  // consecutive convergents a/b, c/d
    while (d <= q_max) {
        std::printf(" %s", label(index(a, b), index(c, d)).c_str());
        long long next_p = a + c, next_q = b + d;
        a = c, b = d, c = next_p, d = next_q;
    }
    std::printf("\n");
}
