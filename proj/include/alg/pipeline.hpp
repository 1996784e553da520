#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace alg {

class parse_error : public std::runtime_error {
public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

enum class TrialType { go, stop };

/// One stop-signal-task trial.  rt_ms is absent for successful stops and go
/// omissions; a stop trial with rt_ms present is a failed stop (SRRT).
struct TrialRecord {
  std::string participant_id;
  int trial_index = 0;  // 1-based order within the session
  TrialType trial_type = TrialType::go;
  std::optional<double> rt_ms;
  std::optional<double> ssd_ms;
};

struct ParticipantTrials {
  std::string participant_id;
  std::vector<TrialRecord> trials;  // ordered by trial_index
};

/// Parse the trial CSV (`participant_id,trial_index,trial_type,rt_ms,ssd_ms`,
/// header required).  Groups appear in first-occurrence order; trials are
/// sorted by trial_index with duplicates rejected.
std::vector<ParticipantTrials> parse_trials(std::istream& in);
std::vector<ParticipantTrials> parse_trials_file(const std::string& path);

/// A session partitioned into trial-type clusters.  A trial is type B iff its
/// predecessor is a stop trial; the first trial is type A.  GORT samples hold
/// go-trial reaction times only.
struct ClusteredSession {
  std::string participant_id;
  std::vector<double> gort_a;
  std::vector<double> gort_b;
  std::vector<double> gort_s;  // all go RTs, trial order
  int n_trials = 0;
  int n_go = 0;
  int n_stop = 0;
  int n_type_a = 0;
  int n_type_b = 0;
  int n_go_omitted = 0;
};

ClusteredSession partition_clusters(const ParticipantTrials& pt);

/// Differenced GORTs (type B minus type A).  The first min(|A|,|B|) values of
/// the larger cluster (trial order) are used, so the value multisets involved
/// do not depend on the seed; the seed only permutes the pairing.
std::vector<double> difference_gorts(const ClusteredSession& cs, std::uint64_t seed);

/// Positional pairing b[i] - a[i] over the common prefix.
std::vector<double> difference_gorts_paired(std::span<const double> a,
                                            std::span<const double> b);

}  // namespace alg
