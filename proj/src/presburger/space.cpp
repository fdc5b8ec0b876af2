#include "ppnfifo/presburger/space.hpp"

#include <algorithm>
#include <set>

#include "ppnfifo/errors.hpp"

namespace ppnfifo::presburger {

Space::Space(std::vector<std::string> dims, std::vector<std::string> params,
             std::vector<std::string> existentials)
    : dims_(std::move(dims)), params_(std::move(params)), existentials_(std::move(existentials)) {
  std::set<std::string_view> seen;
  for (std::size_t c = 0; c < n_columns(); ++c) {
    const auto& name = column_name(c);
    if (name.empty()) throw SpaceMismatch("empty column name in space");
    if (!seen.insert(name).second) throw SpaceMismatch("duplicate name '" + name + "' in space");
  }
}

std::optional<std::size_t> Space::column_of(std::string_view name) const {
  for (std::size_t c = 0; c < n_columns(); ++c) {
    if (column_name(c) == name) return c;
  }
  return std::nullopt;
}

const std::string& Space::column_name(std::size_t col) const {
  if (col < dims_.size()) return dims_[col];
  col -= dims_.size();
  if (col < existentials_.size()) return existentials_[col];
  return params_.at(col - existentials_.size());
}

Space Space::with_params(std::vector<std::string> params) const {
  return Space(dims_, std::move(params), existentials_);
}

Space Space::with_dims(std::vector<std::string> dims) const {
  return Space(std::move(dims), params_, existentials_);
}

std::string fresh_name(std::string name, const std::vector<std::string>& taken) {
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += '\'';
  return name;
}

}  // namespace ppnfifo::presburger
