#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ppnfifo::presburger {

/// Named integer columns of a set. Column layout is fixed: dimensions first,
/// then existentially quantified auxiliaries, then symbolic parameters.
class Space {
 public:
  Space() = default;
  explicit Space(std::vector<std::string> dims, std::vector<std::string> params = {},
                 std::vector<std::string> existentials = {});

  const std::vector<std::string>& dims() const { return dims_; }
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<std::string>& existentials() const { return existentials_; }

  std::size_t n_dims() const { return dims_.size(); }
  std::size_t n_params() const { return params_.size(); }
  std::size_t n_existentials() const { return existentials_.size(); }
  std::size_t n_columns() const { return dims_.size() + existentials_.size() + params_.size(); }

  std::size_t existential_column(std::size_t i) const { return dims_.size() + i; }
  std::size_t param_column(std::size_t i) const { return dims_.size() + existentials_.size() + i; }
  bool is_param_column(std::size_t col) const { return col >= dims_.size() + existentials_.size(); }

  std::optional<std::size_t> column_of(std::string_view name) const;
  const std::string& column_name(std::size_t col) const;

  /// Same space with the parameter list replaced (parameter columns are not remapped).
  Space with_params(std::vector<std::string> params) const;
  Space with_dims(std::vector<std::string> dims) const;

  bool operator==(const Space&) const = default;

 private:
  std::vector<std::string> dims_;
  std::vector<std::string> params_;
  std::vector<std::string> existentials_;
};

/// Returns `name`, primed until it collides with nothing in `taken`.
std::string fresh_name(std::string name, const std::vector<std::string>& taken);

}  // namespace ppnfifo::presburger
