#pragma once

#include <span>
#include <string_view>

namespace ppm::detail {

struct BundledCorpus {
  std::string_view name;
  std::string_view provenance;
  std::string_view measurements;
  std::string_view specs;
  std::string_view externals;  // may be empty
  std::string_view sets;
};

std::span<const BundledCorpus> bundled_corpora();

}  // namespace ppm::detail
