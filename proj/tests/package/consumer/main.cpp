#include "projcov/special.hpp"

#include <cmath>
#include <cstdio>

int main() {
  const double c = *projcov::special::max_gauss_cutoff(100, 0.05, projcov::Sidedness::UpperOneSided).c_max;
  std::printf("%.4f\n", c);
  return std::fabs(c - 3.2834) < 5e-4 ? 0 : 1;
}
