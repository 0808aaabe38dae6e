#ifndef EXTDEP_PARAMS_IO_HPP
#define EXTDEP_PARAMS_IO_HPP

#include <iosfwd>
#include <string>

#include "extdep/hw_model.hpp"
#include "extdep/ht_model.hpp"
#include "extdep/invlogistic.hpp"

namespace extdep::io {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};

// `name = value` lines; '#' comments and blank lines ignored; unknown keys
// rejected. HW keys: alpha theta u_thr k lambda mu0 mu1 mu2 sigma0 sigma1
// sigma2. HT keys: alpha beta gamma delta u_thr.
hw::HwParams read_hw_params(std::istream& in);
hw::HwParams read_hw_params_file(const std::string& path);
ht::HtParams read_ht_params(std::istream& in);
ht::HtParams read_ht_params_file(const std::string& path);

// Sample CSV: `# xi=..., seed=..., n=...` comments, an `x,y` header, one
// pair per line at 17 significant digits.
void write_sample_csv(std::ostream& out, const invlog::Sample& s);
void write_sample_csv_file(const std::string& path, const invlog::Sample& s);
invlog::Sample read_sample_csv(std::istream& in);
invlog::Sample read_sample_csv_file(const std::string& path);

std::string format_g17(double v);

}  // namespace extdep::io

#endif
