#include "pvlt/rng.hpp"

namespace pvlt {

double NormalSource::uniform01() {
  // 53 high bits -> [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace pvlt
