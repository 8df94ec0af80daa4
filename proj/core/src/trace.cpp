#include "ssresf/trace.hpp"

#include <algorithm>
#include <limits>

namespace ssresf {

bool Trace::value_at(NetId net, SimTime t) const {
  auto it = waves.find(net);
  if (it == waves.end() || it->second.empty()) return false;
  const auto& wave = it->second;
  auto pos = std::upper_bound(
      wave.begin(), wave.end(), t,
      [](SimTime t, const std::pair<SimTime, bool>& p) { return t < p.first; });
  if (pos == wave.begin()) return false;  // before first entry: reset value
  return std::prev(pos)->second;
}

size_t Trace::toggle_count(NetId net) const {
  auto it = waves.find(net);
  if (it == waves.end() || it->second.empty()) return 0;
  return it->second.size() - 1;
}

SoftErrorVerdict compare_traces(const Trace& golden, const Trace& faulty,
                                SimTime t0, SimTime t1) {
  if (golden.waves.size() != faulty.waves.size())
    throw Error(ErrorKind::NetSetMismatch, "different recorded net counts");
  for (const auto& [net, wave] : golden.waves)
    if (!faulty.waves.count(net))
      throw Error(ErrorKind::NetSetMismatch, "net " + std::to_string(net));

  SoftErrorVerdict verdict;
  SimTime best = std::numeric_limits<SimTime>::max();
  for (const auto& [net, gwave] : golden.waves) {
    const auto& fwave = faulty.waves.at(net);
    // Merge-walk both change lists over [t0, t1).
    bool gv = golden.value_at(net, t0);
    bool fv = faulty.value_at(net, t0);
    SimTime t = t0;
    size_t gi = 0, fi = 0;
    while (gwave.size() > gi && gwave[gi].first <= t0) ++gi;
    while (fwave.size() > fi && fwave[fi].first <= t0) ++fi;
    while (t < t1) {
      if (gv != fv) {
        if (t < best) {
          best = t;
          verdict.divergence_net = net;
        } else if (t == best && net < verdict.divergence_net) {
          verdict.divergence_net = net;
        }
        break;
      }
      SimTime next = t1;
      if (gi < gwave.size()) next = std::min(next, gwave[gi].first);
      if (fi < fwave.size()) next = std::min(next, fwave[fi].first);
      if (next >= t1) break;
      t = next;
      if (gi < gwave.size() && gwave[gi].first == t) gv = gwave[gi++].second;
      if (fi < fwave.size() && fwave[fi].first == t) fv = fwave[fi++].second;
    }
  }
  if (verdict.divergence_net >= 0) {
    verdict.outcome = Outcome::SoftError;
    verdict.divergence_time = best;
  }
  return verdict;
}

}  // namespace ssresf
