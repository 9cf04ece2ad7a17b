// seampp: seamless multimodel temperature postprocessing pipeline.
//
// Subcommands: synth, fit, verify, run, plot.  Exit codes: 0 success,
// 1 usage error, 2 data error, 3 numerical failure.

#include <seampp/config.hpp>
#include <seampp/errors.hpp>
#include <seampp/pipeline.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct CliArgs {
	std::string config_path;
	std::optional<std::uint64_t> seed;
	std::optional<std::string> out_dir;
	std::optional<std::string> modes;
};

void add_common_flags(CLI::App* cmd, CliArgs& args) {
	cmd->add_option("--config", args.config_path, "config file (JSON)")
		->required()
		->check(CLI::ExistingFile);
	cmd->add_option("--seed", args.seed, "override the config seed");
	cmd->add_option("--out", args.out_dir, "override the output directory");
	cmd->add_option("--modes", args.modes, "override the mode list (comma-separated)");
}

int dispatch(const CliArgs& args,
             const std::function<void(const seampp::RunConfig&, std::ostream&)>& command) {
	try {
		seampp::RunConfig cfg = seampp::load_config(args.config_path);
		seampp::apply_overrides(cfg, args.seed, args.out_dir, args.modes);
		command(cfg, std::cout);
		return 0;
	} catch (const seampp::DataError& e) {
		std::cerr << "data error: " << e.what() << '\n';
		return 2;
	} catch (const seampp::NumericError& e) {
		std::cerr << "numerical failure: " << e.what() << '\n';
		return 3;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 3;
	}
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"seamless multimodel temperature postprocessing"};
	app.require_subcommand(1);

	CliArgs args;
	const std::function<void(const seampp::RunConfig&, std::ostream&)> commands[] = {
		seampp::cmd_synth, seampp::cmd_fit, seampp::cmd_verify, seampp::cmd_run, seampp::cmd_plot};
	CLI::App* subs[] = {
		app.add_subcommand("synth", "generate the synthetic dataset CSVs"),
		app.add_subcommand("fit", "fit all cells on the full dataset"),
		app.add_subcommand("verify", "cross-validate and write score tables"),
		app.add_subcommand("run", "full pipeline: data, fits, scores, charts"),
		app.add_subcommand("plot", "re-render charts from existing score CSVs"),
	};
	for (auto* sub : subs)
		add_common_flags(sub, args);

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return 1;
	}

	for (std::size_t i = 0; i < std::size(subs); ++i)
		if (subs[i]->parsed())
			return dispatch(args, commands[i]);
	return 1;
}
