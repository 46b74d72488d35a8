#include "tdesign/eig.hpp"

#include <stdexcept>
#include <string>

#include "lapack_shim.hpp"

namespace tdesign {

namespace {

void check_info(lapack_int info, const char* what) {
  if (info != 0)
    throw std::runtime_error(std::string(what) + " failed, info=" + std::to_string(info));
}

}  // namespace

std::vector<double> sym_eigvals(std::vector<double> a, int n) {
  std::vector<double> w(n);
  check_info(LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', n, a.data(), n, w.data()), "dsyevd");
  return w;
}

std::vector<double> sym_eig(std::vector<double>& a, int n) {
  std::vector<double> w(n);
  check_info(LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'U', n, a.data(), n, w.data()), "dsyevd");
  return w;
}

std::vector<double> herm_eigvals(const ComplexMatrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("herm_eigvals: matrix not square");
  const int n = a.rows;
  std::vector<cd> work(a.data);
  std::vector<double> w(n);
  check_info(LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'U', n, work.data(), n, w.data()), "zheevd");
  return w;
}

}  // namespace tdesign
