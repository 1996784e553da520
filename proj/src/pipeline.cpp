#include "alg/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "alg/params.hpp"
#include "alg/rng.hpp"

namespace alg {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_optional_double(const std::string& raw, std::size_t line,
                                            const std::string& field) {
  const std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw parse_error(line, "field '" + field + "': not a number: '" + s + "'");
  }
  if (pos != s.size())
    throw parse_error(line, "field '" + field + "': trailing characters in '" + s + "'");
  if (!std::isfinite(v))
    throw parse_error(line, "field '" + field + "': non-finite value");
  return v;
}

}  // namespace

std::vector<ParticipantTrials> parse_trials(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw parse_error(1, "empty input, header expected");
  ++lineno;
  {
    auto header = split_csv_line(line);
    const std::vector<std::string> expected = {"participant_id", "trial_index",
                                              "trial_type", "rt_ms", "ssd_ms"};
    if (header.size() != expected.size())
      throw parse_error(lineno, "header must have 5 columns");
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (trim(header[i]) != expected[i])
        throw parse_error(lineno, "unexpected header column '" + header[i] +
                                      "' (want '" + expected[i] + "')");
  }

  std::vector<ParticipantTrials> groups;
  std::map<std::string, std::size_t> index_of;

  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 5) throw parse_error(lineno, "expected 5 fields");

    TrialRecord rec;
    rec.participant_id = trim(f[0]);
    if (rec.participant_id.empty())
      throw parse_error(lineno, "field 'participant_id': empty");

    const auto idx = parse_optional_double(f[1], lineno, "trial_index");
    if (!idx || *idx != std::floor(*idx) || *idx < 1)
      throw parse_error(lineno, "field 'trial_index': must be a positive integer");
    rec.trial_index = static_cast<int>(*idx);

    const std::string type = trim(f[2]);
    if (type == "go")
      rec.trial_type = TrialType::go;
    else if (type == "stop")
      rec.trial_type = TrialType::stop;
    else
      throw parse_error(lineno, "field 'trial_type': must be 'go' or 'stop', got '" +
                                    type + "'");

    rec.rt_ms = parse_optional_double(f[3], lineno, "rt_ms");
    if (rec.rt_ms && *rec.rt_ms <= 0.0)
      throw parse_error(lineno, "field 'rt_ms': must be positive when present");
    rec.ssd_ms = parse_optional_double(f[4], lineno, "ssd_ms");

    auto [it, inserted] = index_of.try_emplace(rec.participant_id, groups.size());
    if (inserted) groups.push_back({rec.participant_id, {}});
    groups[it->second].trials.push_back(std::move(rec));
  }

  for (auto& g : groups) {
    std::stable_sort(g.trials.begin(), g.trials.end(),
                     [](const TrialRecord& a, const TrialRecord& b) {
                       return a.trial_index < b.trial_index;
                     });
    for (std::size_t i = 1; i < g.trials.size(); ++i)
      if (g.trials[i].trial_index == g.trials[i - 1].trial_index)
        throw parse_error(0, "participant '" + g.participant_id +
                                 "': duplicate trial_index " +
                                 std::to_string(g.trials[i].trial_index));
  }
  return groups;
}

std::vector<ParticipantTrials> parse_trials_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open file: " + path);
  return parse_trials(in);
}

ClusteredSession partition_clusters(const ParticipantTrials& pt) {
  if (pt.trials.empty()) throw domain_error("empty trial sequence");
  ClusteredSession cs;
  cs.participant_id = pt.participant_id;
  cs.n_trials = static_cast<int>(pt.trials.size());

  for (std::size_t i = 0; i < pt.trials.size(); ++i) {
    const TrialRecord& t = pt.trials[i];
    const bool type_b = i > 0 && pt.trials[i - 1].trial_type == TrialType::stop;
    (type_b ? cs.n_type_b : cs.n_type_a)++;
    if (t.trial_type == TrialType::stop) {
      ++cs.n_stop;
      continue;  // stop trials contribute no GORT (failed-stop RTs are SRRTs)
    }
    ++cs.n_go;
    if (!t.rt_ms) {
      ++cs.n_go_omitted;  // counts for sequencing only
      continue;
    }
    cs.gort_s.push_back(*t.rt_ms);
    (type_b ? cs.gort_b : cs.gort_a).push_back(*t.rt_ms);
  }
  return cs;
}

std::vector<double> difference_gorts_paired(std::span<const double> a,
                                            std::span<const double> b) {
  const std::size_t m = std::min(a.size(), b.size());
  std::vector<double> d(m);
  for (std::size_t i = 0; i < m; ++i) d[i] = b[i] - a[i];
  return d;
}

std::vector<double> difference_gorts(const ClusteredSession& cs, std::uint64_t seed) {
  if (cs.gort_a.empty()) throw domain_error("participant '" + cs.participant_id +
                                            "': type-A GORT cluster is empty");
  if (cs.gort_b.empty()) throw domain_error("participant '" + cs.participant_id +
                                            "': type-B GORT cluster is empty");
  const std::size_t m = std::min(cs.gort_a.size(), cs.gort_b.size());
  std::vector<double> a(cs.gort_a.begin(), cs.gort_a.begin() + m);
  std::vector<double> b(cs.gort_b.begin(), cs.gort_b.begin() + m);
  // Fisher-Yates on the b side: random pairing without replacement.
  SplitMix64 g(seed);
  for (std::size_t i = m; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(g.next() % i);
    std::swap(b[i - 1], b[j]);
  }
  return difference_gorts_paired(a, b);
}

}  // namespace alg
