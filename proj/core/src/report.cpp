#include "hexpst/report.hpp"

#include <nlohmann/json.hpp>

namespace hexpst {

using nlohmann::json;

json to_json(const TransferReport& r) {
  json j;
  j["input"] = r.path.empty() ? json() : json(r.path.front());
  j["output"] = r.path.empty() ? json() : json(r.path.back());
  j["path"] = r.path;
  j["n_three_chain_hops"] = r.n_three_chain_hops;
  j["pulse_count"] = r.pulse_count;
  j["pulses"] = r.pulses;
  j["total_duration"] = r.total_duration.to_string();
  j["total_seconds"] = r.total_seconds;
  j["fidelity_modulus"] = r.fidelity_modulus;
  j["measured_phase"] = r.measured_phase;
  j["predicted_phase"] = r.predicted_phase ? json(*r.predicted_phase) : json();
  j["phase_error"] = r.phase_error ? json(*r.phase_error) : json();
  j["max_norm_deviation"] = r.max_norm_deviation;
  j["tolerance"] = {{"modulus", r.tolerance.modulus}, {"phase", r.tolerance.phase}};
  j["verdict"] = r.pass ? "pass" : "fail";
  return j;
}

json to_json(const ChainInventory& inv) {
  json chains = json::array();
  for (const Chain& c : inv.chains) {
    chains.push_back({{"kind", to_string(c.kind)},
                      {"indices", c.indices},
                      {"couplings", c.couplings},
                      {"interplane", c.interplane},
                      {"description", c.description}});
  }
  return {{"census",
           {{"two_chain", inv.count(ChainKind::two_chain)},
            {"three_chain", inv.count(ChainKind::three_chain)},
            {"isolated", inv.count(ChainKind::isolated)},
            {"interplane", inv.interplane_count()}}},
          {"max_off_pattern", inv.max_off_pattern},
          {"max_coupling_error", inv.max_coupling_error},
          {"chains", chains}};
}

}  // namespace hexpst
