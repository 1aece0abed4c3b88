#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "padiclf/qexp.hpp"
#include "padiclf/real.hpp"

namespace padiclf::petersson {

using Mat = std::array<long, 4>; // (a, b; c, d)

// Coset representatives of Gamma_0(N) \ SL_2(Z); size = N prod_{q|N} (1 + 1/q).
struct CosetDecomposition {
    long N = 1;
    std::vector<Mat> reps;
    long index() const { return (long)reps.size(); }
};

CosetDecomposition coset_reps(long N);
long gamma0_index(long N);

// Coset representatives of Gamma_0(M) \ Gamma_0(N) for N | M, congruent to the
// identity mod p when p > 1.
std::vector<Mat> trace_cosets(long M, long N, long p);

// Pointwise evaluator of a weight-k form on the upper half plane.
class FormEval {
public:
    virtual ~FormEval() = default;
    virtual Cplx eval(const Cplx& z) const = 0;
    virtual int weight() const = 0;
    virtual long level() const = 0;
    // bound on the series tail dropped by eval at height y (absolute value)
    virtual double tail_bound(double y) const = 0;
};

using FormPtr = std::shared_ptr<const FormEval>;

FormPtr make_eval(const qexp::QExpC& f);
FormPtr make_eval(const qexp::QExpQ& f);
FormPtr make_eval(const qexp::QExpA& f);
// f(M z)
FormPtr shift_eval(FormPtr f, long M);
// pointwise product
FormPtr product_eval(FormPtr f, FormPtr g);
// scalar multiple
FormPtr scale_eval(FormPtr f, Cplx c);
// trace from Gamma_0(M) down to Gamma_0(N): sum_gamma chibar(gamma) f|[gamma]_k,
// reps congruent to 1 mod p (trivial character case: chibar = 1)
FormPtr trace_eval(FormPtr f, long target_N, long p);

// Numerically recover the first B q-expansion coefficients of an evaluator by
// Fourier inversion on a horizontal line (exponentially conditioned in B*y0;
// keep B modest).
qexp::QExpC recover_qexp(const FormPtr& f, long B, int digits = 60, double y0 = 0.5);

// trace_down as a q-expansion: exact index-multiple when the input is already
// modular at the target level, otherwise the numerically recovered expansion
// of the pointwise trace from Gamma_0(source_M).
qexp::QExpC trace_down(const qexp::QExpC& f, long source_M, long target_N, long p, long B_out,
                       int digits = 60);

struct PetParams {
    int digits = 60;       // working precision
    double Y = 7.0;        // height cut; tail beyond is estimated analytically
    int x_nodes = 20;      // Gauss-Legendre nodes per x panel (2 panels)
    int y_nodes = 20;      // nodes per y panel
    int y_panels = 6;
    double tol = 1e-12;    // target; series tails are required below 0.1 * tol * scale
    bool parallel = true;
};

struct PetValue {
    Cplx value;
    Real abs_error;  // quadrature-difference + series-tail + height-tail estimate
    long index = 1;
    int digits = 60;
};

// <f, g> on Gamma_0(N), volume-normalized:
// (3/pi) (1/index) sum_gamma int_F f(gw) conj(g(gw)) Im(gw)^k dmu(w).
PetValue petersson_product(const FormPtr& f, const FormPtr& g, long N, const PetParams& par = {});

struct IdentityReport {
    std::string name;
    Cplx lhs, rhs;
    double rel_error = 0;
    double tolerance = 0;
    bool pass = false;
    std::string detail;
};

// Named identity checks on their canonical instances:
//   scaling            <Delta(2z),Delta(2z)> = 2^{-12} <Delta,Delta> on Gamma_0(2)
//   self-translate     <Delta(z),Delta(2z)> / <Delta,Delta> = -1/256
//   adjoint-Tp         <T(2)f, f'> = 2^k <f, f'(2z)> with f = f' = Delta at level 2
//   euler-denominator  <h#, hnat> vs the explicit Euler factor, h = Delta, p = 2
//   euler-numerator-r0 <f g#, hnat> vs (-a/b)(1+p^{-1})^{-1}(1-bg af/ah)(1-bg bf/ah), f=g=Delta, h weight 24
//   euler-numerator-r1 <f g#, hnat> = -p conj(b_h)(1 - b_g a_f/a_h) <fg, h(pz)>, f 2-new weight 8
//   euler-numerator-r2 <f g#, hnat(2z)> = -p conj(b_h) <fg, h(4z)>, f 4-new weight 6
//   atkin-lehner       <f(2z) g, h> = conj(chi_f)(2) 2^{m-k} <f g(2z), h(2z)>
//   trace-pairing      <trc f, f'> = index * <f, f'>
//   interpolation-C    the p^{m(r-1)}/alpha^{r-1} constant of the higher-level functional
IdentityReport verify_identity(const std::string& name, const PetParams& par = {}, double tolerance = 1e-4);

std::vector<std::string> identity_names();

} // namespace padiclf::petersson
