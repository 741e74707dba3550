#include <iostream>

#include "CLI11.hpp"

#include "chern/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Pointwise curvature analysis for Hermitian holomorphic vector bundles"};
    app.require_subcommand(1);

    chern::RunConfig config;

    auto add_tensor_flags = [&](CLI::App* cmd, bool positional_input) {
        cmd->add_option("--model", config.model,
                        "model spec, e.g. fs:n=2,c=2 | flat:n=2,r=2 | product:fs(1,2)xfs(1,2) | "
                        "random-ckl:n=3,seed=7 | random-hermitian:n=3,r=2,seed=1 | "
                        "shifted-positive:n=3,seed=1,s=4");
        if (positional_input)
            cmd->add_option("input", config.input, "tensor file");
        else
            cmd->add_option("--input", config.input, "tensor file");
    };

    CLI::App* gen = app.add_subcommand("gen", "write a model tensor to a file");
    add_tensor_flags(gen, false);
    gen->add_option("-o,--output", config.output, "output path");

    CLI::App* analyze = app.add_subcommand("analyze", "summaries of the curvature functionals");
    add_tensor_flags(analyze, true);
    analyze->add_option("--samples", config.samples, "sample count");
    analyze->add_option("--seed", config.seed, "random seed");
    analyze->add_option("-o,--output", config.output, "report path");

    CLI::App* certify = app.add_subcommand("certify", "positivity certificate via min-max search");
    add_tensor_flags(certify, false);
    certify->add_option("--kind", config.kind,
                        "griffiths | rc | bc | uniform-rc | uniform-bc");
    certify->add_option("--k", config.k, "base subspace dimension");
    certify->add_option("--l", config.l, "fiber subspace dimension");
    certify->add_option("--points", config.points, "extra tensor files for a multi-point minimum");
    certify->add_option("--restarts", config.restarts, "optimizer restarts");
    certify->add_option("--seed", config.seed, "random seed");
    certify->add_option("--tol", config.tol, "optimizer tolerance");
    certify->add_option("-o,--output", config.output, "report path");

    CLI::App* vanishing = app.add_subcommand("vanishing", "vanishing constants and region table");
    add_tensor_flags(vanishing, false);
    vanishing->add_option("--model-f", config.model_f, "auxiliary bundle model");
    vanishing->add_option("--input-f", config.input_f, "auxiliary bundle file");
    vanishing->add_option("--k", config.k, "base subspace dimension");
    vanishing->add_option("--points", config.points, "extra tensor files");
    vanishing->add_option("--restarts", config.restarts, "optimizer restarts");
    vanishing->add_option("--seed", config.seed, "random seed");
    vanishing->add_option("--tol", config.tol, "optimizer tolerance");
    vanishing->add_option("-o,--output", config.output, "report path");

    CLI::App* extremal = app.add_subcommand("extremal", "extremal subspaces and the Ric_k chain");
    add_tensor_flags(extremal, false);
    extremal->add_option("--k", config.k, "subspace dimension");
    extremal->add_option("--mode", config.mode, "min | max (max mirrors through -R)");
    extremal->add_option("--trials", config.trials, "random test directions");
    extremal->add_option("--restarts", config.restarts, "optimizer restarts");
    extremal->add_option("--seed", config.seed, "random seed");
    extremal->add_option("--tol", config.tol, "optimizer tolerance");
    extremal->add_option("-o,--output", config.output, "report path");

    CLI::App* verify = app.add_subcommand("verify-identities", "Monte Carlo moment suite");
    verify->add_option("--samples", config.samples, "Monte Carlo samples");
    verify->add_option("--seed", config.seed, "random seed");
    verify->add_option("-o,--output", config.output, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    config.command = app.get_subcommands().front()->get_name();
    return chern::run(config, std::cout, std::cerr);
}
