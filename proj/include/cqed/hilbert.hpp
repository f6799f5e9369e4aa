// hilbert.hpp — Truncated photon (x) spin Hilbert-space descriptors

#pragma once

#include <stdexcept>
#include <string>

namespace cqed {

// Spin sector: either the full 2^N product space of N two-level emitters,
// or a single Dicke ladder with fixed total angular momentum j (dim 2j+1).
// DickeJ(j) stands for the maximal-j sector of N = 2j identical emitters.
enum class SpinKind { FullProduct, DickeJ };

struct SpinRep {
    SpinKind kind{SpinKind::FullProduct};
    int n_emitters{1}; // N
    int two_j{1};      // 2j, DickeJ only

    static SpinRep full_product(int n) {
        if (n < 1) throw std::invalid_argument("SpinRep: n_emitters must be >= 1");
        SpinRep r;
        r.kind = SpinKind::FullProduct;
        r.n_emitters = n;
        r.two_j = n;
        return r;
    }

    static SpinRep dicke(int two_j) {
        if (two_j < 0) throw std::invalid_argument("SpinRep: 2j must be >= 0");
        SpinRep r;
        r.kind = SpinKind::DickeJ;
        r.n_emitters = two_j; // N = 2j for the maximal sector
        r.two_j = two_j;
        return r;
    }

    double j() const { return 0.5 * two_j; }

    int dim() const {
        if (kind == SpinKind::FullProduct) {
            if (n_emitters > 24) throw std::invalid_argument("SpinRep: full product space too large");
            return 1 << n_emitters;
        }
        return two_j + 1;
    }

    bool operator==(const SpinRep& o) const {
        return kind == o.kind && n_emitters == o.n_emitters && two_j == o.two_j;
    }
    bool operator!=(const SpinRep& o) const { return !(*this == o); }
};

// Basis ordering is photon (x) spin, photon factor leftmost, everywhere.
// FullProduct spin basis: site 0 is the leftmost tensor factor; per-site
// index 0 = |e> (sigma_z = +1), index 1 = |g>.
// DickeJ basis: Jz eigenbasis ordered m = +j ... -j.
struct HilbertSpace {
    int fock_cutoff{1}; // max photon number n_max; photon dim = n_max + 1
    SpinRep spin;

    HilbertSpace() = default;
    HilbertSpace(int cutoff, SpinRep s) : fock_cutoff(cutoff), spin(s) {
        if (cutoff < 1) throw std::invalid_argument("HilbertSpace: fock_cutoff must be >= 1");
    }

    int photon_dim() const { return fock_cutoff + 1; }
    int spin_dim() const { return spin.dim(); }
    long total_dim() const { return static_cast<long>(photon_dim()) * spin_dim(); }

    long index(int n, int s) const { return static_cast<long>(n) * spin_dim() + s; }

    bool operator==(const HilbertSpace& o) const {
        return fock_cutoff == o.fock_cutoff && spin == o.spin;
    }
    bool operator!=(const HilbertSpace& o) const { return !(*this == o); }

    std::string describe() const {
        std::string s = "fock_cutoff=" + std::to_string(fock_cutoff);
        s += spin.kind == SpinKind::FullProduct
                 ? ", full_product N=" + std::to_string(spin.n_emitters)
                 : ", dicke 2j=" + std::to_string(spin.two_j);
        return s;
    }
};

} // namespace cqed
