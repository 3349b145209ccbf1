/*
 * Copyright 2026 The tccsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tcc/checker/certificate.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tcc {

Verdict check_certificate(const History& h) {
  validate_history(h);

  Verdict verdict;
  verdict.mode = "certificate";
  auto violated = [&](std::string predicate, EventId cause, EventId at,
                      std::string detail) {
    verdict.status = VerdictStatus::Violated;
    verdict.violation = Violation{std::move(predicate),
                                  cause == at ? std::vector<EventId>{at}
                                              : std::vector<EventId>{cause, at},
                                  std::move(detail)};
  };

  for (const auto& [sid, seq] : h.sessions()) {
    std::vector<std::pair<EventId, const VectorClock*>> write_clocks;
    std::vector<std::pair<EventId, const VectorClock*>> read_clocks;

    for (const Event* e : seq) {
      if (e->is_read()) {
        if (!e->read_cert) {
          throw std::invalid_argument("read event " + std::to_string(e->id) +
                                      " has no certificate");
        }
        const ReadCertificate& cert = *e->read_cert;
        if (!leq(cert.version_vc, cert.gsvc)) {
          violated("read-certificate", e->id, e->id,
                   "returned version is not within the stability snapshot");
          return verdict;
        }
        if (guarantees_ryw(e->level)) {
          for (const auto& [wid, dvc] : write_clocks) {
            if (!leq(*dvc, cert.gsvc)) {
              violated("ryw", wid, e->id,
                       "own write is not covered by the read's snapshot");
              return verdict;
            }
          }
        }
        if (guarantees_mr(e->level)) {
          for (const auto& [rid, vc] : read_clocks) {
            if (!leq(*vc, cert.gsvc)) {
              violated("mr", rid, e->id,
                       "previously read version is not covered by the "
                       "read's snapshot");
              return verdict;
            }
          }
        }
        read_clocks.emplace_back(e->id, &cert.version_vc);
      } else {
        if (!e->write_cert) {
          throw std::invalid_argument("write event " + std::to_string(e->id) +
                                      " has no certificate");
        }
        const WriteCertificate& cert = *e->write_cert;
        if (guarantees_mw(e->level)) {
          for (const auto& [wid, dvc] : write_clocks) {
            if (!lt(*dvc, cert.dvc)) {
              violated("mw", wid, e->id,
                       "write clock does not strictly dominate an earlier "
                       "write of the session");
              return verdict;
            }
          }
        }
        if (guarantees_wfr(e->level)) {
          for (const auto& [rid, vc] : read_clocks) {
            if (!lt(*vc, cert.dvc)) {
              violated("wfr", rid, e->id,
                       "write clock does not strictly dominate a "
                       "previously read version");
              return verdict;
            }
          }
        }
        write_clocks.emplace_back(e->id, &cert.dvc);
      }
    }
  }
  return verdict;
}

}  // namespace tcc
