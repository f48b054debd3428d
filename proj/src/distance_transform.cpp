#include "dirshape/distance_transform.hpp"

#include "dirshape/error.hpp"
#include "dirshape/kernels.hpp"

namespace dirshape {

DistanceField distance_transform(const BinaryMask& mask, Exec exec) {
  if (mask.empty() || area(mask) == 0) {
    throw Error(ErrorKind::EmptyForeground, "distance transform needs a foreground pixel");
  }
  std::vector<std::int64_t> sq(mask.size());
  if (exec.parallel()) {
    kernels::edt_omp(mask, sq, exec.workers);
  } else {
    kernels::edt_serial(mask, sq);
  }
  return DistanceField(mask.width(), mask.height(), std::move(sq));
}

}  // namespace dirshape
