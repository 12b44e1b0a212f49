// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spinqec/spin_system.hpp"

namespace spinqec {

/// Two-level y-rotation acting on an ordered basis-level pair (lower, upper).
/// On the pair the unitary is [[cos t, -sin t], [sin t, cos t]] and identity
/// elsewhere; a pi pulse is the t = pi/2 case [[0, -1], [1, 0]]. With
/// phase_flag set the rotation angle is negated: [[cos t, sin t], [-sin t, cos t]].
struct Pulse {
  enum class Kind { Pi, Rotation };

  Kind kind = Kind::Pi;
  int lower = 0;
  int upper = 1;
  double cos_theta = 0.0;
  double sin_theta = 1.0;
  bool phase_flag = false;

  static Pulse pi(int lower, int upper, bool phase_flag = false);
  static Pulse rotation(int lower, int upper, double cos_theta, double sin_theta,
                        bool phase_flag = false);
};

/// Embed a pulse as a dim x dim unitary.
Mat pulse_unitary(const Pulse& pulse, Eigen::Index dim);

/// Apply a pulse to a state in place; equivalent to pulse_unitary * v.
void apply_pulse(const Pulse& pulse, Vec& v);

struct PulseSequence {
  Eigen::Index dim = 8;
  std::vector<Pulse> pulses;
  /// Expected state after the 1-based pulse index, when attached.
  std::map<int, Vec> checkpoints;
};

Mat sequence_unitary(const PulseSequence& seq);

/// Pulse alphabets: Adjacent restricts pi pulses to level pairs one step
/// apart; Extended also allows two-step pairs, shortening the sequences.
enum class PulseAlphabet { Adjacent, Extended };

/// Frozen spin-7/2 encoding sequence: maps
/// alpha|-7/2> + beta e^{i phi}|-5/2>  ->  alpha|0_L> + beta e^{i phi}|1_L>.
/// 12 pulses for the adjacent alphabet, 9 for the extended one.
PulseSequence encoding_sequence(PulseAlphabet alphabet = PulseAlphabet::Adjacent);

/// Frozen spin-7/2 decoding sequence. Sends the clean encoded state to the
/// (-7/2,+7/2) pair and the three first-order error branches to the
/// (-5/2,+5/2) [Z], (-3/2,+3/2) [X] and (-1/2,+1/2) [Y] pairs.
/// 21 pulses for the adjacent alphabet, 9 for the extended one (the extended
/// X and Y branches carry a harmless global sign).
PulseSequence decoding_sequence(PulseAlphabet alphabet = PulseAlphabet::Adjacent);

/// Decoded target pair for each branch, shared by sequences and measurement.
std::pair<int, int> decoded_pair(ErrorKind branch);

/// Reference intermediate states for the frozen adjacent-alphabet sequences,
/// parametric in the stored qubit. beta_phase = beta * e^{i phi}.
Vec initial_state(Complex alpha, Complex beta_phase);
Vec encoded_state(Complex alpha, Complex beta_phase);
/// Corrupted encoded state in the reference sign convention of the decoding
/// checkpoints. For Y this equals -i times the normalized S_Y image.
Vec branch_input(ErrorKind branch, Complex alpha, Complex beta_phase);
/// Final decoded state per branch: alpha|-m> + beta_phase|+m>.
Vec branch_output(ErrorKind branch, Complex alpha, Complex beta_phase);

std::map<int, Vec> encoding_checkpoints(Complex alpha, Complex beta_phase);
std::map<int, Vec> decoding_checkpoints(ErrorKind branch, Complex alpha,
                                        Complex beta_phase);

struct RunResult {
  Vec final_state;
  std::vector<Vec> trace;  // state after every pulse, when recorded
  std::vector<std::pair<int, double>> checkpoint_deviations;
  double max_checkpoint_deviation = 0.0;
};

/// Apply the pulses in order. Records intermediate states when asked, and
/// checks any attached checkpoints; a deviation above 1e-9 throws
/// CheckpointViolation with the pulse index.
RunResult run_sequence(const PulseSequence& seq, const Vec& input, bool record = false);

/// Brute-force search for pi-pulse assignments reproducing consecutive
/// checkpoint states. Each row of `tracks` is one parallel trajectory (the
/// same pulses must map every track's state k to its state k+1).
std::vector<Pulse> synthesize_pi_targets(const std::vector<std::vector<Vec>>& tracks,
                                         int max_pulses_per_gap,
                                         PulseAlphabet alphabet = PulseAlphabet::Adjacent);
/// Single-track convenience overload.
std::vector<Pulse> synthesize_pi_targets(const std::vector<Vec>& checkpoints,
                                         int max_pulses_per_gap,
                                         PulseAlphabet alphabet = PulseAlphabet::Adjacent);

/// Pi-pulse ladder moving an amplitude pair (from_low, from_high) onto
/// (to_low, to_high) with both amplitudes arriving with + sign.
std::vector<Pulse> pair_transfer_sequence(std::pair<int, int> from,
                                          std::pair<int, int> to,
                                          PulseAlphabet alphabet);

/// Pulse-list export: {kind, target_pair (as m values), cos_theta, sin_theta,
/// phase_flag} per pulse.
nlohmann::json sequence_to_json(const PulseSequence& seq);
/// Intermediate-state trace as CSV rows: pulse_index, basis_level,
/// amplitude_re, amplitude_im.
std::string trace_to_csv(const std::vector<Vec>& trace, double spin);

}  // namespace spinqec
