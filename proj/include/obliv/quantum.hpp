#pragma once

// Two-qubit density-matrix engine for the EPR-pair protocol, two-universal
// Toeplitz hashing, and the analytic security-bound and sampling-lemma
// machinery. Per-pair product structure is enforced throughout: a pair is a
// 4x4 density matrix (Alice qubit tensor Bob qubit), never entangled across
// pairs.

#include "obliv/mcom.hpp"
#include "obliv/rational.hpp"
#include "obliv/rng.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace obliv {

using Cplx = std::complex<double>;
using Mat2 = std::array<Cplx, 4>;    // row major 2x2
using Mat4 = std::array<Cplx, 16>;   // row major 4x4; basis |ab> with index 2a+b

/// One EPR pair (or its post-measurement descendants).
struct PairState {
    Mat4 rho{};
};

inline PairState epr_pair() {
    PairState s;
    s.rho[0 * 4 + 0] = 0.5;
    s.rho[0 * 4 + 3] = 0.5;
    s.rho[3 * 4 + 0] = 0.5;
    s.rho[3 * 4 + 3] = 0.5;
    return s;
}

inline PairState product_state(int a, int b) {
    PairState s;
    const int i = 2 * a + b;
    s.rho[i * 4 + i] = 1.0;
    return s;
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out[(2 * i + k) * 4 + (2 * j + l)] = a[i * 2 + j] * b[k * 2 + l];
    return out;
}

inline Mat4 matmul(const Mat4& a, const Mat4& b) {
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const Cplx aik = a[i * 4 + k];
            if (aik == Cplx(0)) continue;
            for (int j = 0; j < 4; ++j) out[i * 4 + j] += aik * b[k * 4 + j];
        }
    return out;
}

inline double trace_real(const Mat4& a) {
    double t = 0;
    for (int i = 0; i < 4; ++i) t += a[i * 4 + i].real();
    return t;
}

/// Projector onto outcome o of a measurement in basis theta (0 computational,
/// 1 Hadamard).
inline Mat2 qubit_projector(int theta, int outcome) {
    if (theta == 0) {
        Mat2 p{};
        p[outcome * 2 + outcome] = 1.0;
        return p;
    }
    const double s = outcome ? -0.5 : 0.5;
    return Mat2{0.5, s, s, 0.5};  // |+><+| or |-><-|
}

inline Mat2 qubit_identity() { return Mat2{1.0, 0.0, 0.0, 1.0}; }

/// Eigenvalues of the Hermitian 4x4 via Jacobi sweeps on the real 8x8
/// embedding [[Re, -Im], [Im, Re]] (each eigenvalue appears twice).
inline std::array<double, 8> hermitian_eigenvalues(const Mat4& h) {
    double s[8][8];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            s[i][j] = h[i * 4 + j].real();
            s[i + 4][j + 4] = h[i * 4 + j].real();
            s[i][j + 4] = -h[i * 4 + j].imag();
            s[i + 4][j] = h[i * 4 + j].imag();
        }
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int p = 0; p < 8; ++p)
            for (int q = p + 1; q < 8; ++q) off += s[p][q] * s[p][q];
        if (off < 1e-24) break;
        for (int p = 0; p < 8; ++p)
            for (int q = p + 1; q < 8; ++q) {
                if (std::abs(s[p][q]) < 1e-18) continue;
                const double theta = 0.5 * std::atan2(2 * s[p][q], s[q][q] - s[p][p]);
                const double c = std::cos(theta), sn = std::sin(theta);
                for (int i = 0; i < 8; ++i) {
                    const double sip = s[i][p], siq = s[i][q];
                    s[i][p] = c * sip - sn * siq;
                    s[i][q] = sn * sip + c * siq;
                }
                for (int i = 0; i < 8; ++i) {
                    const double spi = s[p][i], sqi = s[q][i];
                    s[p][i] = c * spi - sn * sqi;
                    s[q][i] = sn * spi + c * sqi;
                }
            }
    }
    std::array<double, 8> eig{};
    for (int i = 0; i < 8; ++i) eig[i] = s[i][i];
    return eig;
}

/// Hermitian, trace 1, PSD within tol.
inline bool check_pair_state(const PairState& s, double tol = 1e-9) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Cplx d = s.rho[i * 4 + j] - std::conj(s.rho[j * 4 + i]);
            if (std::abs(d) > tol) return false;
        }
    if (std::abs(trace_real(s.rho) - 1.0) > tol) return false;
    for (double e : hermitian_eigenvalues(s.rho))
        if (e < -tol) return false;
    return true;
}

/// Exact Born probabilities of the four joint outcomes for bases
/// (theta_alice, theta_bob).
inline std::array<double, 4> pair_outcome_probs(const PairState& s, int basis_alice, int basis_bob) {
    std::array<double, 4> probs{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const Mat4 proj = kron(qubit_projector(basis_alice, a), qubit_projector(basis_bob, b));
            probs[2 * a + b] = trace_real(matmul(s.rho, proj));
        }
    return probs;
}

struct MeasureResult {
    int outcome_a = 0;
    int outcome_b = 0;
    PairState post;
};

/// Measures both qubits (Born rule on product projectors).
inline MeasureResult measure_pair(const PairState& s, int basis_alice, int basis_bob, Rng& rng) {
    if (!check_pair_state(s)) throw_domain("InvalidState: not a density matrix");
    const auto probs = pair_outcome_probs(s, basis_alice, basis_bob);
    const double u = rng.unit();
    double acc = 0;
    int pick = 3;
    for (int i = 0; i < 4; ++i) {
        acc += probs[i];
        if (u < acc) {
            pick = i;
            break;
        }
    }
    MeasureResult out;
    out.outcome_a = pick >> 1;
    out.outcome_b = pick & 1;
    const Mat4 proj = kron(qubit_projector(basis_alice, out.outcome_a),
                           qubit_projector(basis_bob, out.outcome_b));
    Mat4 post = matmul(matmul(proj, s.rho), proj);
    const double p = trace_real(post);
    for (auto& c : post) c /= p;
    out.post.rho = post;
    return out;
}

enum class QubitSide { alice, bob };

/// Measures one side only; the other qubit's state updates by collapse.
inline std::pair<int, PairState> measure_single(const PairState& s, QubitSide side, int basis,
                                                Rng& rng) {
    const Mat2 id = qubit_identity();
    double p0;
    {
        const Mat2 proj = qubit_projector(basis, 0);
        const Mat4 full = side == QubitSide::alice ? kron(proj, id) : kron(id, proj);
        p0 = trace_real(matmul(s.rho, full));
    }
    const int outcome = rng.unit() < p0 ? 0 : 1;
    const Mat2 proj = qubit_projector(basis, outcome);
    const Mat4 full = side == QubitSide::alice ? kron(proj, id) : kron(id, proj);
    Mat4 post = matmul(matmul(full, s.rho), full);
    const double p = trace_real(post);
    PairState out;
    for (int i = 0; i < 16; ++i) out.rho[i] = post[i] / p;
    return {outcome, out};
}

// ---------------------------------------------------------------------------
// Two-universal hashing (binary Toeplitz family)
// ---------------------------------------------------------------------------

struct HashSpec {
    int in_len = 0;
    int out_len = 0;
    Bits seed;  // in_len + out_len - 1 bits; T[i][j] = seed[i - j + in_len - 1]

    std::uint8_t entry(int i, int j) const { return seed[static_cast<std::size_t>(i - j + in_len - 1)]; }
};

inline HashSpec sample_toeplitz(int in_len, int out_len, Rng& rng) {
    if (in_len < 1 || out_len < 1) throw_domain("sample_toeplitz: lengths >= 1");
    HashSpec h;
    h.in_len = in_len;
    h.out_len = out_len;
    h.seed = random_bits(static_cast<std::size_t>(in_len + out_len - 1), rng);
    return h;
}

/// Toeplitz matrix-vector product over GF(2).
inline Bits hash_extract(const HashSpec& spec, const Bits& input) {
    if (static_cast<int>(input.size()) != spec.in_len)
        throw_domain("LengthMismatch: hash input length != spec");
    Bits out(static_cast<std::size_t>(spec.out_len), 0);
    for (int i = 0; i < spec.out_len; ++i) {
        std::uint8_t acc = 0;
        for (int j = 0; j < spec.in_len; ++j) acc ^= spec.entry(i, j) & input[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Analytic bounds
// ---------------------------------------------------------------------------

/// Distance-from-uniform of the unchosen key (security for Alice):
///   2^{-((1/4 - eps/2 - h(delta))(1-alpha)m - k)/2 - 1}
///   + 2 exp(-2 eps^2 (1-alpha) m)
///   + sqrt(3) exp(-alpha' kappa delta^2 / 16),  alpha' = (1/2 - delta) alpha.
inline double security_bound_eval(long m, int kappa, double alpha, int k, double eps, double delta) {
    if (m < 1 || kappa < 1 || k < 1) throw_domain("security_bound_eval: m, kappa, k >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw_domain("DomainError: alpha outside (0,1)");
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("DomainError: eps outside (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw_domain("DomainError: delta outside (0,1)");
    const double h = -delta * std::log2(delta) - (1.0 - delta) * std::log2(1.0 - delta);
    const double exponent = -0.5 * ((0.25 - eps / 2.0 - h) * (1.0 - alpha) * m - k) - 1.0;
    const double t1 = std::exp2(exponent);
    const double t2 = 2.0 * std::exp(-2.0 * eps * eps * (1.0 - alpha) * m);
    const double alpha_prime = (0.5 - delta) * alpha;
    const double t3 = std::sqrt(3.0) * std::exp(-alpha_prime * kappa * delta * delta / 16.0);
    return t1 + t2 + t3;
}

/// Failure bound of the block sampling strategy, in the alpha' form:
/// 3 exp(-(1/2 - delta) alpha kappa delta^2 / 8).
inline double sampling_bound(int kappa, double alpha, double delta) {
    return 3.0 * std::exp(-(0.5 - delta) * alpha * kappa * delta * delta / 8.0);
}

enum class StringFamily { all_zeros, all_ones, half_dense, block_concentrated, random_string };

inline const char* family_name(StringFamily f) {
    switch (f) {
        case StringFamily::all_zeros: return "all-zeros";
        case StringFamily::all_ones: return "all-ones";
        case StringFamily::half_dense: return "half-dense";
        case StringFamily::block_concentrated: return "block-concentrated";
        case StringFamily::random_string: return "random";
    }
    return "?";
}

inline Bits make_family_string(StringFamily f, int b, int kappa, std::uint64_t seed) {
    const std::size_t m = static_cast<std::size_t>(b) * kappa;
    Bits y(m, 0);
    switch (f) {
        case StringFamily::all_zeros: break;
        case StringFamily::all_ones: y.assign(m, 1); break;
        case StringFamily::half_dense:
            for (std::size_t i = 0; i < m; i += 2) y[i] = 1;
            break;
        case StringFamily::block_concentrated:
            // all ones inside the first ceil(kappa/2) blocks
            for (std::size_t i = 0; i < m; ++i)
                if (i / b < static_cast<std::size_t>((kappa + 1) / 2)) y[i] = 1;
            break;
        case StringFamily::random_string: {
            Rng rng(derive_seed(seed, 2, 0));
            y = random_bits(m, rng);
            break;
        }
    }
    return y;
}

struct SamplingCheckResult {
    std::string family;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double empirical = 0.0;
    double bound = 0.0;
};

/// Monte Carlo check of the block-sampling lemma: t is a random alpha*kappa
/// subset of blocks, T' keeps each checked position with probability 1/2, and
/// a failure is (1/|T'|) sum_{T'} y_i <= (1/((1-alpha)m)) sum_{complement} y_i - delta.
/// Empty T' counts as no failure.
inline SamplingCheckResult sampling_check(StringFamily family, int b, int kappa,
                                          const Rational& alpha, double delta, std::uint64_t trials,
                                          std::uint64_t seed) {
    if (b < 1 || kappa < 1 || trials < 1) throw_domain("sampling_check: b, kappa, trials >= 1");
    if (alpha <= 0 || alpha > Rational(1, 2)) throw_domain("sampling_check: alpha in (0, 1/2]");
    const Rational ak = alpha * kappa;
    if (denominator(ak) != 1) throw_domain("sampling_check: alpha*kappa must be integral");
    const int check_blocks = numerator(ak).convert_to<int>();
    const std::size_t m = static_cast<std::size_t>(b) * kappa;
    const Bits y = make_family_string(family, b, kappa, seed);

    SamplingCheckResult res;
    res.family = family_name(family);
    res.trials = trials;
    res.bound = sampling_bound(kappa, to_double(alpha), delta);

    std::vector<int> blocks(static_cast<std::size_t>(kappa));
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, 3, trial));
        for (int i = 0; i < kappa; ++i) blocks[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < check_blocks; ++i)  // partial Fisher-Yates
            std::swap(blocks[static_cast<std::size_t>(i)],
                      blocks[static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(kappa - i))]);
        std::uint64_t t_sum = 0, tp_sum = 0, tp_size = 0;
        std::vector<bool> checked(static_cast<std::size_t>(kappa), false);
        for (int i = 0; i < check_blocks; ++i) checked[static_cast<std::size_t>(blocks[static_cast<std::size_t>(i)])] = true;
        for (int blk = 0; blk < kappa; ++blk) {
            if (!checked[static_cast<std::size_t>(blk)]) continue;
            for (int j = 0; j < b; ++j) {
                const std::size_t pos = static_cast<std::size_t>(blk) * b + static_cast<std::size_t>(j);
                if (rng.coin()) {
                    ++tp_size;
                    tp_sum += y[pos];
                }
            }
        }
        std::uint64_t comp_sum = 0;
        for (int blk = 0; blk < kappa; ++blk) {
            if (checked[static_cast<std::size_t>(blk)]) continue;
            for (int j = 0; j < b; ++j) comp_sum += y[static_cast<std::size_t>(blk) * b + static_cast<std::size_t>(j)];
        }
        (void)t_sum;
        if (tp_size == 0) continue;
        const double sampled = double(tp_sum) / double(tp_size);
        const double complement = double(comp_sum) / ((1.0 - to_double(alpha)) * double(m));
        if (sampled <= complement - delta) ++res.failures;
    }
    res.empirical = double(res.failures) / double(res.trials);
    return res;
}

}  // namespace obliv
