#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "selfprod/constants.hpp"
#include "selfprod/core.hpp"

namespace selfprod {

/// One (x, count, prediction, ratio) record; the main terms are
/// x/sqrt(log x) for tau, x/loglog x for omega and bigomega, and
/// c0*sqrt(x) for phi.  Prediction and ratio are NaN where the main
/// term is undefined (log x <= 0 or loglog x <= 0 at tiny x).
struct AsymptoticsRow {
    u64 x = 0;
    u64 count = 0;
    double prediction = 0;
    double ratio = 0;
};

struct PiLRow {
    u64 x = 0;
    u32 l = 0;
    u64 pi_l = 0;
    u64 pi_l_star = 0;
    double pred = 0;      // (x/log x) (loglog x)^(l-1)/(l-1)! * lambda((l-1)/loglog x)
    double pred_star = 0; // same with lambda*
};

struct HarnessOptions {
    u64 prime_limit = 1000000;
    unsigned threads = 0;
};

/// Formats reals with 12 significant digits, '.' decimal separator,
/// no locale dependence.
std::string fmt_real(double v);

// CSV column contracts (bit-exact):
//   asymptotics: x,count,prediction,ratio   (phi scans append ,c0_gap)
//   collisions:  n,k1,k2
//   pi-l:        x,l,pi_l,pi_l_star,pred,pred_star
//   fcheck:      s,lhs,rhs,gap,bound,pass

AsymptoticsRow make_asymptotics_row(FKind kind, u64 x, u64 count, double c0_value);

/// One asymptotics row for a single x.
void cmd_count(std::ostream& out, FKind kind, u64 x, const HarnessOptions& opt = {});

/// One row per x in ascending x_list; phi gains the |ratio - c0| column.
void cmd_scan(std::ostream& out, FKind kind, const std::vector<u64>& x_list,
              const HarnessOptions& opt = {});

/// Collision records as CSV; a human-readable summary with the bad-n
/// count B(x) and the error-term diagnostic
/// B(x) (loglog x)^(3/2) / (x (log3 x)^(1/2) (log4 x)^2) goes to `summary`
/// so the CSV body stays machine-clean.
void cmd_collisions(std::ostream& out, std::ostream& summary, FKind kind, u64 x,
                    const HarnessOptions& opt = {});

/// Prints the witness k with k*phi(k) = n, or "none".
void cmd_invert_phi(std::ostream& out, u64 n);

/// pi_l / pi_l* rows for 1 <= l <= max observed omega at x.  Prediction
/// columns are NaN for l with (l-1)/loglog x outside lambda's [0, 2] domain.
void cmd_pi_l(std::ostream& out, u64 x, const HarnessOptions& opt = {});

/// JSON array of {name, value, prime_limit, tail_bound}: c0, c1(A) and
/// c2(A) for A in {2,3,4,5}, lambda and lambda* on z = 0, 0.1, ..., 1.
void cmd_constants(std::ostream& out, const HarnessOptions& opt = {});

/// fcheck CSV for each s in s_list.
void cmd_fcheck(std::ostream& out, const std::vector<double>& s_list, u64 x_cap,
                const HarnessOptions& opt = {});

} // namespace selfprod
