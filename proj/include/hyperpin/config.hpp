#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyperpin {

/// Experiment configuration read from an INI file:
///
///   ; comments are whole lines starting with ';'
///   [topology]
///   kind = ring
///   n = 7
///
/// Unknown sections or keys are rejected. Missing keys keep their defaults.
struct ExperimentConfig {
  struct Topology {
    std::string kind = "ring";
    int n = 7;
    double p = 0.01;
    int o = 3;
    std::string orientation = "centered";
    std::uint64_t seed = 1;
    std::string path;
    int candidate_cap = 0;  // ER tail sets sampled per head; 0 means n - 1
  } topology;

  struct Dynamics {
    std::string model = "consensus";  // consensus | lorenz_arctan
    double sigma = 1.0;
    double kappa = 5.0;
    double t_end = 0.0;  // 0 selects the model default
    double step = 0.0;   // 0 selects the model default
    int record_stride = 10;
    std::string init = "index";  // index | gaussian
    double init_variance = 100.0;
    std::string pinner_init;  // comma list; empty selects the model default
  } dynamics;

  struct Selection {
    std::string method = "greedy";  // greedy | exhaustive | random | degree | sweep
    std::string pins;               // explicit head sets, e.g. "0,1;2,3;4,6"
    std::string candidates = "singletons";  // singletons | pins
    int cap = 4;
    int exhaustive = 0;  // table2: also run the capped exhaustive search
    int replicates = 100;
    int n_min = 5;
    int n_max = 20;
    std::string p_list = "0.01,0.02";
    std::string o_list = "3,4,5,6";
  } selection;

  struct Msf {
    double re_min = -1.0, re_max = 5.0;
    double im_min = -2.0, im_max = 2.0;
    int re_points = 5, im_points = 5;
    double transient = 100.0;
    double horizon = 1100.0;
    double renorm = 1.0;
    double step = 1e-3;
    double mu_max = 50.0;
  } msf;

  struct Output {
    std::string directory = "out";
    std::string formats = "csv";
  } output;

  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig load(const std::string& path);

  /// Every key with its effective value, in the file syntax.
  void write(std::ostream& out) const;
  void validate() const;
};

std::vector<double> parse_double_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
/// "0,1;2,3" -> {{0,1},{2,3}}.
std::vector<std::vector<int>> parse_head_sets(const std::string& text);

}  // namespace hyperpin
