#ifndef CONJULAB_REGISTRY_HPP
#define CONJULAB_REGISTRY_HPP

#include <string>
#include <string_view>
#include <vector>

#include "conjulab/theorems.hpp"

namespace conjulab {

/// One registered certification check. Checks derive their random corpora
/// from the context seed and their own id, so results do not depend on the
/// order in which the registry is run.
struct CheckDef {
  std::string id;
  std::string summary;
  CheckReport (*run)(const CheckContext&);
};

/// Fixed-order list of every check; report files follow this order.
const std::vector<CheckDef>& check_registry();

/// Lookup by id; nullptr when absent.
const CheckDef* find_check(std::string_view id);

}  // namespace conjulab

#endif  // CONJULAB_REGISTRY_HPP
