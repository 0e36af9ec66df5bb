#pragma once

#include <functional>

#include "stern/congruence.hpp"
#include "stern/pregular.hpp"

namespace stern {

// One verifiable claim id as exposed by the CLI: the polynomial congruence
// registry plus the bespoke lemma/theorem checkers, all behind one shape.
struct TaskDef {
  std::string id;
  std::string summary;
  std::string dims;  // grid dimensions the task reads, e.g. "a b k m"
  ClaimGrid defaults;
  std::function<std::vector<VerificationReport>(const ClaimGrid&, SequenceStore&, unsigned jobs,
                                                bool allow_b0)>
      run;
};

const std::vector<TaskDef>& task_registry();
const TaskDef* find_task(const std::string& id);
std::vector<std::string> task_ids();

}  // namespace stern
