// Sample the continued three-disk function along a few lines and report how
// its modulus behaves: a bounded attractor for (1, x, x), linear growth for
// (1, 1, x) and decay for (x, x, x). Writes theta_attractor.svg when asked.
#include <cstdio>
#include <cstring>

#include "skeinlab/analytic.hpp"
#include "skeinlab/json_io.hpp"

using namespace skeinlab;

int main(int argc, char** argv) {
    std::printf("%10s %16s %16s %16s\n", "x", "|theta(1,x,x)|", "|theta(1,1,x)|", "|theta(x,x,x)|");
    for (double x : {1.0, 2.5, 5.0, 10.0, 30.0, 100.0, 1000.0, 10000.0}) {
        std::printf("%10g %16.10g %16.10g %16.6g\n", x, std::abs(theta_c(1, x, x)), std::abs(theta_c(1, 1, x)),
                    std::abs(theta_c(x, x, x)));
    }
    if (argc > 1 && std::strcmp(argv[1], "--svg") == 0) {
        SamplePath path{parse_path("1,x,x"), 0, 40, 4000};
        write_text_file("theta_attractor.svg", samples_to_svg(sample(ContinuedFunction::theta, path)));
        std::printf("wrote theta_attractor.svg\n");
    }
}
