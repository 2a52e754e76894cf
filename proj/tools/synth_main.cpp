#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gracefill/synthetic.hpp"

using namespace gracefill;

// Generates ACC1B-style day files with GRACE-like statistics, for demos
// and tests when the real archive files are not at hand.
int main(int argc, char** argv) {
    CLI::App app{"synthetic GRACE-like accelerometer day-file generator"};

    std::string sat = "A";
    std::string out = "";
    std::uint64_t seed = 1;
    std::size_t samples = 86400;
    app.add_option("--sat", sat, "satellite, A or B")->required();
    app.add_option("--out", out, "output path")->required();
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--samples", samples, "number of 1 Hz samples");

    CLI11_PARSE(app, argc, argv);

    try {
        SynthDaySpec spec = reference_day_spec(sat_from_char(sat[0]), seed);
        spec.n_samples = samples;
        write_synthetic_acc1b(spec, out);
        std::printf("wrote %s (%zu samples, satellite %c)\n", out.c_str(), samples,
                    to_char(spec.sat));
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
