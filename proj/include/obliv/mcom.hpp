#pragma once

// Multi-commitment from string OT: the sender commits to k bits using kappa
// OT(1,2,k) instances invoked on random inputs, and can later open any subset
// T of bit positions. The receiver checks every opened instance against the
// commit message and against the string he actually received from the OT, so
// a sender who wants to open a modified bit must alter one of the two OT
// inputs per instance and is caught whenever the receiver holds that one.

#include "obliv/rational.hpp"
#include "obliv/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace obliv {

using Bits = std::vector<std::uint8_t>;

inline Bits random_bits(std::size_t n, Rng& rng) {
    Bits out(n);
    for (auto& b : out) b = rng.coin() ? 1 : 0;
    return out;
}

inline Bits xor_bits(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) throw_domain("xor_bits: length mismatch");
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

/// The kappa randomized string-OT instances backing one commitment.
struct McomResource {
    std::size_t k = 0;
    int kappa = 0;
    std::vector<Bits> x0, x1;  // sender side
    std::vector<int> c;        // receiver choice bits
    std::vector<Bits> y;       // y^i = x_{c^i}^i (receiver side)

    static McomResource sample(std::size_t k, int kappa, Rng& rng) {
        McomResource r;
        r.k = k;
        r.kappa = kappa;
        for (int i = 0; i < kappa; ++i) {
            r.x0.push_back(random_bits(k, rng));
            r.x1.push_back(random_bits(k, rng));
            r.c.push_back(rng.coin() ? 1 : 0);
            r.y.push_back(r.c.back() ? r.x1.back() : r.x0.back());
        }
        return r;
    }

    static McomResource with_choices(std::size_t k, const std::vector<int>& choices, Rng& rng) {
        McomResource r;
        r.k = k;
        r.kappa = static_cast<int>(choices.size());
        for (int i = 0; i < r.kappa; ++i) {
            r.x0.push_back(random_bits(k, rng));
            r.x1.push_back(random_bits(k, rng));
            r.c.push_back(choices[i]);
            r.y.push_back(r.c.back() ? r.x1.back() : r.x0.back());
        }
        return r;
    }
};

struct McomOpening {
    std::vector<std::size_t> T;   // opened bit positions, strictly increasing
    Bits b_T;                     // claimed committed bits at T
    std::vector<Bits> x0_T, x1_T;  // per instance, restricted to T (aligned with T)
};

class McomSession {
public:
    explicit McomSession(McomResource res) : res_(std::move(res)) {}

    const McomResource& resource() const { return res_; }

    /// Commit(b): m^i := x_0^i xor x_1^i xor b for every instance.
    void commit(const Bits& b) {
        if (b.size() != res_.k) throw_domain("McomSession::commit: wrong commitment length");
        b_ = b;
        m_.clear();
        for (int i = 0; i < res_.kappa; ++i) m_.push_back(xor_bits(xor_bits(res_.x0[i], res_.x1[i]), b));
        committed_ = true;
    }

    const std::vector<Bits>& messages() const { return m_; }

    McomOpening honest_open(std::span<const std::size_t> T) const {
        require_committed();
        McomOpening o;
        o.T.assign(T.begin(), T.end());
        for (std::size_t pos : o.T) {
            if (pos >= res_.k) throw_domain("McomSession::honest_open: position out of range");
            o.b_T.push_back(b_[pos]);
        }
        for (int i = 0; i < res_.kappa; ++i) {
            Bits x0t, x1t;
            for (std::size_t pos : o.T) {
                x0t.push_back(res_.x0[i][pos]);
                x1t.push_back(res_.x1[i][pos]);
            }
            o.x0_T.push_back(std::move(x0t));
            o.x1_T.push_back(std::move(x1t));
        }
        return o;
    }

    struct VerifyOutcome {
        bool accepted = false;
        Bits b_T;
    };

    /// Receiver check: (m^i)_T = (x_0^i xor x_1^i xor b)_T and (y^i)_T = (x_c^i)_T.
    VerifyOutcome verify(const McomOpening& o) const {
        require_committed();
        if (o.x0_T.size() != static_cast<std::size_t>(res_.kappa) ||
            o.x1_T.size() != static_cast<std::size_t>(res_.kappa) || o.b_T.size() != o.T.size())
            throw_domain("MalformedOpening: instance or length mismatch");
        for (std::size_t j = 0; j < o.T.size(); ++j) {
            if (o.T[j] >= res_.k || (j > 0 && o.T[j] <= o.T[j - 1]))
                throw_domain("MalformedOpening: positions not strictly increasing in range");
        }
        for (int i = 0; i < res_.kappa; ++i) {
            if (o.x0_T[i].size() != o.T.size() || o.x1_T[i].size() != o.T.size())
                throw_domain("MalformedOpening: restriction length mismatch");
            for (std::size_t j = 0; j < o.T.size(); ++j) {
                const std::size_t pos = o.T[j];
                if (m_[i][pos] != (o.x0_T[i][j] ^ o.x1_T[i][j] ^ o.b_T[j])) return {false, {}};
                const std::uint8_t held = res_.c[i] ? o.x1_T[i][j] : o.x0_T[i][j];
                if (res_.y[i][pos] != held) return {false, {}};
            }
        }
        return {true, o.b_T};
    }

    /// Simulator extraction: b_j := maj over instances of m^i_j ^ x0^i_j ^ x1^i_j.
    Bits extract_majority() const {
        require_committed();
        Bits out(res_.k, 0);
        for (std::size_t j = 0; j < res_.k; ++j) {
            int ones = 0;
            for (int i = 0; i < res_.kappa; ++i) ones += m_[i][j] ^ res_.x0[i][j] ^ res_.x1[i][j];
            out[j] = 2 * ones >= res_.kappa ? 1 : 0;
        }
        return out;
    }

private:
    void require_committed() const {
        if (!committed_) throw_domain("McomSession: commit phase has not run");
    }

    McomResource res_;
    std::vector<Bits> m_;
    Bits b_;
    bool committed_ = false;
};

/// Exact acceptance probability, over the OT choice bits, of a sender who
/// opens b with bit `flip_pos` flipped and adjusts x_0^i at that position in
/// every instance. Enumerates all 2^kappa choice vectors.
inline Rational mcom_flip_attack_acceptance(std::size_t k, int kappa, std::size_t flip_pos,
                                            std::uint64_t seed) {
    if (kappa < 1 || kappa > 20) throw_domain("mcom_flip_attack_acceptance: kappa in [1,20]");
    if (flip_pos >= k) throw_domain("mcom_flip_attack_acceptance: flip position out of range");
    Rng material_rng(derive_seed(seed, 7, 0));
    std::uint64_t accepted = 0;
    const std::uint64_t total = std::uint64_t(1) << kappa;
    for (std::uint64_t cv = 0; cv < total; ++cv) {
        std::vector<int> choices(kappa);
        for (int i = 0; i < kappa; ++i) choices[i] = int(cv >> i & 1);
        Rng rng(derive_seed(seed, 8, cv));
        McomSession session(McomResource::with_choices(k, choices, rng));
        Bits b = random_bits(k, material_rng);
        session.commit(b);
        std::vector<std::size_t> T(k);
        for (std::size_t j = 0; j < k; ++j) T[j] = j;
        McomOpening o = session.honest_open(T);
        o.b_T[flip_pos] ^= 1;
        for (int i = 0; i < kappa; ++i) o.x0_T[i][flip_pos] ^= 1;  // keep m^i consistent
        if (session.verify(o).accepted) ++accepted;
    }
    return Rational(accepted, total);
}

}  // namespace obliv
