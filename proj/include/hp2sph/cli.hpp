#ifndef HP2SPH_CLI_HPP
#define HP2SPH_CLI_HPP

namespace hp2sph::cli {

/// Command-line front end. Subcommands: grid, sample, analyze, synth,
/// spectrum, study, bench. Returns 0 on success, 2 on argument or input
/// errors, 3 on numeric non-convergence.
int run(int argc, const char* const* argv);

}  // namespace hp2sph::cli

#endif
