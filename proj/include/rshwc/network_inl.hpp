#ifndef RSHWC_NETWORK_INL_HPP_
#define RSHWC_NETWORK_INL_HPP_

#include <algorithm>

namespace rshwc {

template <typename T>
void normalize_set(std::vector<T>& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

}  // namespace rshwc

#endif  // RSHWC_NETWORK_INL_HPP_
