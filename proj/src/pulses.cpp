// SPDX-License-Identifier: Apache-2.0
#include "spinqec/pulses.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace spinqec {

namespace {

// Rotation angles used by the reference sequences.
const double kCos1 = std::sqrt(3.0 / 10.0);
const double kSin1 = std::sqrt(7.0 / 10.0);
const double kCos2 = std::sqrt(7.0 / 10.0);
const double kSin2 = std::sqrt(3.0 / 10.0);
const double kCos3 = std::sqrt(1.0 / 5.0);
const double kSin3 = std::sqrt(4.0 / 5.0);
const double kCos4 = std::sqrt(1.0 / 2.0);
const double kSin4 = std::sqrt(1.0 / 2.0);

const double kHalf = std::sqrt(1.0 / 2.0);   // sqrt(5/10)
const double kTenth = std::sqrt(1.0 / 10.0);
const double kFourTenth = std::sqrt(4.0 / 10.0);

constexpr double kCheckpointTol = 1e-9;

Vec make_state(std::initializer_list<Complex> amps) {
  Vec v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const Complex& a : amps) v(i++) = a;
  return v;
}

}  // namespace

Pulse Pulse::pi(int lower, int upper, bool phase_flag) {
  Pulse p;
  p.kind = Kind::Pi;
  p.lower = lower;
  p.upper = upper;
  p.cos_theta = 0.0;
  p.sin_theta = 1.0;
  p.phase_flag = phase_flag;
  return p;
}

Pulse Pulse::rotation(int lower, int upper, double cos_theta, double sin_theta,
                      bool phase_flag) {
  Pulse p;
  p.kind = Kind::Rotation;
  p.lower = lower;
  p.upper = upper;
  p.cos_theta = cos_theta;
  p.sin_theta = sin_theta;
  p.phase_flag = phase_flag;
  return p;
}

void apply_pulse(const Pulse& pulse, Vec& v) {
  if (pulse.lower == pulse.upper || pulse.lower < 0 || pulse.upper < 0 ||
      pulse.lower >= v.size() || pulse.upper >= v.size())
    throw std::invalid_argument("apply_pulse: target levels out of range");
  const double c = pulse.cos_theta;
  const double s = pulse.phase_flag ? -pulse.sin_theta : pulse.sin_theta;
  const Complex lo = v(pulse.lower);
  const Complex hi = v(pulse.upper);
  v(pulse.lower) = c * lo - s * hi;
  v(pulse.upper) = s * lo + c * hi;
}

Mat pulse_unitary(const Pulse& pulse, Eigen::Index dim) {
  if (pulse.lower < 0 || pulse.upper < 0 || pulse.lower >= dim || pulse.upper >= dim ||
      pulse.lower == pulse.upper)
    throw std::invalid_argument("pulse_unitary: target levels out of range");
  Mat u = Mat::Identity(dim, dim);
  const double c = pulse.cos_theta;
  const double s = pulse.phase_flag ? -pulse.sin_theta : pulse.sin_theta;
  u(pulse.lower, pulse.lower) = c;
  u(pulse.lower, pulse.upper) = -s;
  u(pulse.upper, pulse.lower) = s;
  u(pulse.upper, pulse.upper) = c;
  return u;
}

Mat sequence_unitary(const PulseSequence& seq) {
  Mat u = Mat::Identity(seq.dim, seq.dim);
  for (const Pulse& p : seq.pulses) u = pulse_unitary(p, seq.dim) * u;
  return u;
}

PulseSequence encoding_sequence(PulseAlphabet alphabet) {
  PulseSequence seq;
  seq.dim = 8;
  if (alphabet == PulseAlphabet::Adjacent) {
    // Split the computational pair with the two rotations, then ladder the
    // three occupied levels onto the codeword support.
    seq.pulses = {Pulse::pi(1, 2), Pulse::rotation(0, 1, kCos1, kSin1),
                  Pulse::rotation(2, 3, kCos2, kSin2), Pulse::pi(1, 2)};
    for (auto [lo, hi] : {std::pair{3, 4}, {4, 5}, {5, 6}, {6, 7},
                          {2, 3}, {3, 4}, {4, 5}, {1, 2}})
      seq.pulses.push_back(Pulse::pi(lo, hi));
  } else {
    // Two-step rotations split both amplitudes in place; the flagged pi
    // exchanges the middle pair with the sign the codeword needs.
    seq.pulses = {Pulse::rotation(0, 2, kCos1, kSin1),
                  Pulse::rotation(1, 3, kCos2, kSin2), Pulse::pi(1, 2, true)};
    for (auto [lo, hi] : {std::pair{3, 5}, {5, 7}, {1, 3}, {3, 5}})
      seq.pulses.push_back(Pulse::pi(lo, hi));
  }
  return seq;
}

PulseSequence decoding_sequence(PulseAlphabet alphabet) {
  PulseSequence seq;
  seq.dim = 8;
  if (alphabet == PulseAlphabet::Adjacent) {
    // Seven pi pulses regroup the branches, two U(-theta1) merge the clean
    // and Z branches, then the X/Y branches are unmixed by U(-theta3) and
    // recombined by the two U(theta4).
    for (auto [lo, hi] : {std::pair{4, 5}, {3, 4}, {2, 3}, {1, 2}, {3, 4}, {4, 5}, {5, 6}})
      seq.pulses.push_back(Pulse::pi(lo, hi));
    seq.pulses.push_back(Pulse::rotation(0, 1, kCos1, -kSin1));
    seq.pulses.push_back(Pulse::rotation(6, 7, kCos1, -kSin1));
    seq.pulses.push_back(Pulse::pi(2, 3));
    seq.pulses.push_back(Pulse::pi(4, 5));
    seq.pulses.push_back(Pulse::rotation(3, 4, kCos3, -kSin3));
    for (auto [lo, hi] : {std::pair{2, 3}, {3, 4}, {4, 5}, {3, 4}, {2, 3}})
      seq.pulses.push_back(Pulse::pi(lo, hi));
    seq.pulses.push_back(Pulse::rotation(2, 3, kCos4, kSin4));
    seq.pulses.push_back(Pulse::rotation(4, 5, kCos4, kSin4));
    seq.pulses.push_back(Pulse::pi(4, 5));
    seq.pulses.push_back(Pulse::pi(4, 5));
  } else {
    for (auto [lo, hi] : {std::pair{3, 5}, {1, 3}, {2, 4}, {4, 6}})
      seq.pulses.push_back(Pulse::pi(lo, hi));
    seq.pulses.push_back(Pulse::rotation(0, 1, kCos1, -kSin1));
    seq.pulses.push_back(Pulse::rotation(6, 7, kCos1, -kSin1));
    seq.pulses.push_back(Pulse::rotation(3, 4, kCos3, kSin3));
    seq.pulses.push_back(Pulse::rotation(2, 3, kCos4, kSin4));
    seq.pulses.push_back(Pulse::rotation(4, 5, kCos4, kSin4));
  }
  return seq;
}

std::pair<int, int> decoded_pair(ErrorKind branch) {
  switch (branch) {
    case ErrorKind::None: return {0, 7};
    case ErrorKind::Z: return {1, 6};
    case ErrorKind::X: return {2, 5};
    default: return {3, 4};
  }
}

Vec initial_state(Complex alpha, Complex beta_phase) {
  return make_state({alpha, beta_phase, 0, 0, 0, 0, 0, 0});
}

Vec encoded_state(Complex alpha, Complex beta_phase) {
  const Complex a = alpha, b = beta_phase;
  return make_state({kCos1 * a, 0, -kSin1 * b, 0, 0, kSin1 * a, 0, kCos1 * b});
}

Vec branch_input(ErrorKind branch, Complex alpha, Complex beta_phase) {
  const Complex a = alpha, b = beta_phase;
  switch (branch) {
    case ErrorKind::None:
      return encoded_state(alpha, beta_phase);
    case ErrorKind::Z:
      return make_state({-kSin1 * a, 0, kCos1 * b, 0, 0, kCos1 * a, 0, kSin1 * b});
    case ErrorKind::X:
      return make_state({0, kTenth * a - kFourTenth * b, 0, -kHalf * b, kHalf * a, 0,
                         kFourTenth * a + kTenth * b, 0});
    default:  // Y, equal to -i times the normalized S_Y image
      return make_state({0, -kTenth * a - kFourTenth * b, 0, kHalf * b, kHalf * a, 0,
                         -kFourTenth * a + kTenth * b, 0});
  }
}

Vec branch_output(ErrorKind branch, Complex alpha, Complex beta_phase) {
  const auto [lo, hi] = decoded_pair(branch);
  Vec v = Vec::Zero(8);
  v(lo) = alpha;
  v(hi) = beta_phase;
  return v;
}

std::map<int, Vec> encoding_checkpoints(Complex alpha, Complex beta_phase) {
  const Complex a = alpha, b = beta_phase;
  std::map<int, Vec> cps;
  cps[4] = make_state({kCos1 * a, -kSin1 * b, kSin1 * a, kCos1 * b, 0, 0, 0, 0});
  cps[12] = encoded_state(alpha, beta_phase);
  return cps;
}

std::map<int, Vec> decoding_checkpoints(ErrorKind branch, Complex alpha,
                                        Complex beta_phase) {
  const Complex a = alpha, b = beta_phase;
  const double q = kHalf, u = kTenth, w = kFourTenth, c = kCos1, s = kSin1;
  std::map<int, Vec> cps;
  switch (branch) {
    case ErrorKind::None:
      cps[7] = make_state({c * a, s * a, 0, 0, 0, 0, -s * b, c * b});
      cps[9] = make_state({a, 0, 0, 0, 0, 0, 0, b});
      break;
    case ErrorKind::Z:
      cps[7] = make_state({-s * a, c * a, 0, 0, 0, 0, c * b, s * b});
      cps[9] = make_state({0, a, 0, 0, 0, 0, b, 0});
      break;
    case ErrorKind::X:
      cps[7] = make_state({0, 0, u * a - w * b, q * b, -q * a, -w * a - u * b, 0, 0});
      cps[12] = make_state({0, 0, -q * b, q * a, q * b, -q * a, 0, 0});
      cps[17] = make_state({0, 0, q * a, -q * a, -q * b, -q * b, 0, 0});
      cps[21] = make_state({0, 0, a, 0, 0, b, 0, 0});
      break;
    default:  // Y
      cps[7] = make_state({0, 0, -u * a - w * b, -q * b, -q * a, w * a - u * b, 0, 0});
      cps[12] = make_state({0, 0, q * b, -q * a, q * b, -q * a, 0, 0});
      cps[17] = make_state({0, 0, q * a, q * a, -q * b, q * b, 0, 0});
      cps[21] = make_state({0, 0, 0, a, b, 0, 0, 0});
      break;
  }
  return cps;
}

RunResult run_sequence(const PulseSequence& seq, const Vec& input, bool record) {
  if (input.size() != seq.dim)
    throw std::invalid_argument("run_sequence: input dimension mismatch");
  RunResult result;
  Vec state = input;
  if (record) result.trace.push_back(state);
  int index = 0;
  for (const Pulse& p : seq.pulses) {
    apply_pulse(p, state);
    ++index;
    if (record) result.trace.push_back(state);
    const auto it = seq.checkpoints.find(index);
    if (it != seq.checkpoints.end()) {
      const double dev = max_abs_diff(state, it->second);
      result.checkpoint_deviations.emplace_back(index, dev);
      result.max_checkpoint_deviation = std::max(result.max_checkpoint_deviation, dev);
      if (dev > kCheckpointTol) {
        std::ostringstream msg;
        msg << "checkpoint violation after pulse " << index << ": deviation " << dev;
        throw CheckpointViolation(msg.str(), index, dev);
      }
    }
  }
  result.final_state = std::move(state);
  return result;
}

namespace {

std::vector<std::pair<int, int>> allowed_pairs(Eigen::Index dim, PulseAlphabet alphabet) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < dim; ++i) pairs.emplace_back(i, i + 1);
  if (alphabet == PulseAlphabet::Extended)
    for (int i = 0; i + 2 < dim; ++i) pairs.emplace_back(i, i + 2);
  return pairs;
}

std::string quantized_key(const std::vector<Vec>& states) {
  std::string key;
  key.reserve(states.size() * states.front().size() * 8);
  char buf[64];
  for (const Vec& v : states) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.9f,%.9f;", v(i).real(), v(i).imag());
      key += buf;
    }
  }
  return key;
}

bool tracks_match(const std::vector<Vec>& states, const std::vector<Vec>& targets) {
  for (std::size_t t = 0; t < states.size(); ++t)
    if (max_abs_diff(states[t], targets[t]) > kCheckpointTol) return false;
  return true;
}

}  // namespace

std::vector<Pulse> synthesize_pi_targets(const std::vector<std::vector<Vec>>& tracks,
                                         int max_pulses_per_gap,
                                         PulseAlphabet alphabet) {
  if (tracks.empty() || tracks.front().size() < 2)
    throw std::invalid_argument("synthesize_pi_targets: need at least two checkpoints");
  const std::size_t steps = tracks.front().size();
  for (const auto& t : tracks)
    if (t.size() != steps)
      throw std::invalid_argument("synthesize_pi_targets: ragged checkpoint lists");
  const Eigen::Index dim = tracks.front().front().size();
  const auto pairs = allowed_pairs(dim, alphabet);

  std::vector<Pulse> assignment;
  std::vector<Vec> current;
  for (const auto& t : tracks) current.push_back(t[0]);

  for (std::size_t gap = 1; gap < steps; ++gap) {
    std::vector<Vec> goal;
    for (const auto& t : tracks) goal.push_back(t[gap]);

    // Pi pulses permute amplitude magnitudes, so unequal multisets can never
    // be reached; BFS over pulse applications with state dedup otherwise.
    struct Node {
      std::vector<Vec> states;
      std::vector<Pulse> path;
    };
    std::deque<Node> queue;
    std::unordered_set<std::string> seen;
    queue.push_back({current, {}});
    seen.insert(quantized_key(current));
    bool found = false;
    while (!queue.empty()) {
      Node node = std::move(queue.front());
      queue.pop_front();
      if (tracks_match(node.states, goal)) {
        for (const Pulse& p : node.path) assignment.push_back(p);
        current = node.states;
        found = true;
        break;
      }
      if (static_cast<int>(node.path.size()) >= max_pulses_per_gap) continue;
      for (const auto& [lo, hi] : pairs) {
        Node next = node;
        const Pulse p = Pulse::pi(lo, hi);
        for (Vec& s : next.states) apply_pulse(p, s);
        next.path.push_back(p);
        if (seen.insert(quantized_key(next.states)).second) queue.push_back(std::move(next));
      }
    }
    if (!found) {
      std::ostringstream msg;
      msg << "synthesize_pi_targets: checkpoint " << gap << " unreachable within "
          << max_pulses_per_gap << " pi pulses";
      throw SynthesisError(msg.str(), static_cast<int>(gap));
    }
  }
  return assignment;
}

std::vector<Pulse> synthesize_pi_targets(const std::vector<Vec>& checkpoints,
                                         int max_pulses_per_gap, PulseAlphabet alphabet) {
  return synthesize_pi_targets(std::vector<std::vector<Vec>>{checkpoints},
                               max_pulses_per_gap, alphabet);
}

std::vector<Pulse> pair_transfer_sequence(std::pair<int, int> from, std::pair<int, int> to,
                                          PulseAlphabet alphabet) {
  const int hop = (alphabet == PulseAlphabet::Extended) ? 2 : 1;
  const auto lo_range = std::minmax({from.first, to.first});
  const auto hi_range = std::minmax({from.second, to.second});
  if (lo_range.second >= hi_range.first)
    throw std::invalid_argument("pair_transfer_sequence: amplitude paths overlap");

  auto build_path = [&](int start, int stop) {
    std::vector<Pulse> moves;
    int pos = start;
    int downs = 0;
    while (pos != stop) {
      const int step = std::min(hop, std::abs(stop - pos));
      const int next = pos + (stop > pos ? step : -step);
      if (next < pos) ++downs;
      moves.push_back(Pulse::pi(std::min(pos, next), std::max(pos, next)));
      pos = next;
    }
    // Paths are monotonic, so an odd down count means every move descends;
    // flagging one of them (descend without the sign flip) evens the parity.
    if (downs % 2 == 1) moves.front().phase_flag = true;
    return moves;
  };

  std::vector<Pulse> seq = build_path(from.second, to.second);
  for (const Pulse& p : build_path(from.first, to.first)) seq.push_back(p);
  return seq;
}

namespace {

double index_to_m(Eigen::Index dim, int index) {
  return -0.5 * static_cast<double>(dim - 1) + index;
}

}  // namespace

nlohmann::json sequence_to_json(const PulseSequence& seq) {
  nlohmann::json doc;
  doc["dim"] = seq.dim;
  auto& pulses = doc["pulses"] = nlohmann::json::array();
  for (const Pulse& p : seq.pulses) {
    pulses.push_back({{"kind", p.kind == Pulse::Kind::Pi ? "pi" : "rotation"},
                      {"target_pair", {index_to_m(seq.dim, p.lower), index_to_m(seq.dim, p.upper)}},
                      {"cos_theta", p.cos_theta},
                      {"sin_theta", p.sin_theta},
                      {"phase_flag", p.phase_flag}});
  }
  return doc;
}

std::string trace_to_csv(const std::vector<Vec>& trace, double spin) {
  std::string out = "pulse_index,basis_level,amplitude_re,amplitude_im\n";
  char buf[128];
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const Vec& v = trace[k];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%zu,%.1f,%.17g,%.17g\n", k, -spin + i,
                    v(i).real(), v(i).imag());
      out += buf;
    }
  }
  return out;
}

}  // namespace spinqec
