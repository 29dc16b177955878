#include <CLI11.hpp>

#include "kobpath/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Kobayashi-metric unit-speed reparametrisation toolkit"};
  app.require_subcommand(1);

  kobpath::RunConfig cfg;
  double quad_tol = 0, eps_speed = 0, eps_inv = 0, tol = 0, lambda = 0,
         kappa = 0;
  int n_grid = 0, n_out = 0;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input,-i", cfg.input_path,
                               "JSON input spec");
    if (needs_input) in->required();
    sub->add_option("--out,-o", cfg.output_dir, "output directory");
    sub->add_option("--quad-tol", quad_tol, "quadrature tolerance per segment");
    sub->add_option("--eps-speed", eps_speed, "zero-speed threshold");
    sub->add_option("--eps-inv", eps_inv, "relative inversion tolerance");
    sub->add_option("--tol", tol, "verification tolerance");
    sub->add_option("--n-grid", n_grid, "verification grid size");
    sub->add_option("--n-out", n_out, "sigma sample count");
    sub->add_option("--lambda", lambda, "lambda parameter (>= 1)");
    sub->add_option("--kappa", kappa, "kappa parameter (>= 0)");
    sub->add_option("--seed", cfg.seed, "sampling seed (recorded in reports)");
  };

  const char* commands[] = {"metric",     "distance",    "reparam",
                            "verify-ag",  "verify-ca",   "corollary-a",
                            "corollary-b", "royden",     "demo"};
  const char* descriptions[] = {
      "evaluate the infinitesimal metric k_X(z; v)",
      "evaluate the distance K_X(z, w)",
      "unit-speed reparametrisation pipeline",
      "verify the (lambda, kappa)-almost-geodesic property",
      "verify the (lambda, kappa)-chord-arc property",
      "chord-arc to almost-geodesic conversion checks",
      "almost-geodesic to chord-arc conversion check",
      "Royden lower-bound diagnostic",
      "run the built-in verification suite"};
  for (int i = 0; i < 9; ++i) {
    auto* sub = app.add_subcommand(commands[i], descriptions[i]);
    add_common(sub, std::string(commands[i]) != "demo");
    sub->callback([&, i] { cfg.command = commands[i]; });
  }

  CLI11_PARSE(app, argc, argv);

  for (const CLI::App* sub : app.get_subcommands()) {
    if (sub->count("--quad-tol")) cfg.quad_tol = quad_tol;
    if (sub->count("--eps-speed")) cfg.eps_speed = eps_speed;
    if (sub->count("--eps-inv")) cfg.eps_inv = eps_inv;
    if (sub->count("--tol")) cfg.tol = tol;
    if (sub->count("--n-grid")) cfg.n_grid = n_grid;
    if (sub->count("--n-out")) cfg.n_out = n_out;
    if (sub->count("--lambda")) cfg.lambda = lambda;
    if (sub->count("--kappa")) cfg.kappa = kappa;
  }
  return kobpath::run(cfg);
}
