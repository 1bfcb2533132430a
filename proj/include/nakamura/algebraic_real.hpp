#pragma once

#include <memory>
#include <mutex>

#include "int_poly.hpp"
#include "numeric.hpp"
#include "version.hpp"

namespace nakamura {

// A real algebraic number: a squarefree integer polynomial together with
// an isolating rational interval. Refinement is cached and synchronized;
// copies share state, so equal eigenvalues (shared construction) refine
// together.
class AlgebraicReal {
public:
    AlgebraicReal() = default;

    AlgebraicReal(ZPoly poly, QInterval interval) : impl_(std::make_shared<Impl>()) {
        impl_->poly = primitive_part(poly);
        impl_->iv = std::move(interval);
        impl_->cached_bits = 0;
        if (!impl_->iv.is_point()) {
            impl_->sign_lo = impl_->poly.sign_at(impl_->iv.lo);
            int sign_hi = impl_->poly.sign_at(impl_->iv.hi);
            if (impl_->sign_lo == 0 || impl_->sign_lo * sign_hi >= 0)
                fail(errc::bad_parameter, "interval endpoints must bracket a sign change");
        }
        if (!check_isolating()) fail(errc::bad_parameter, "interval does not isolate one root");
    }

    static AlgebraicReal rational(const Q& v) {
        Q r = v;
        r.canonicalize();
        ZPoly p({-r.get_num(), r.get_den()});
        return AlgebraicReal(std::move(p), QInterval::point(r));
    }

    bool valid() const { return impl_ != nullptr; }
    const ZPoly& poly() const { return impl_->poly; }

    QInterval interval() const {
        std::lock_guard<std::mutex> g(impl_->mu);
        return impl_->iv;
    }

    long cached_bits() const {
        std::lock_guard<std::mutex> g(impl_->mu);
        return impl_->cached_bits;
    }

    bool is_rational() const { return interval().is_point(); }
    Q rational_value() const {
        auto iv = interval();
        assert(iv.is_point());
        return iv.lo;
    }

    // Shrink the interval to width <= 2^-bits by sign bisection. The root
    // never leaves the interval; each step halves the width.
    QInterval refine_to(long bits) const {
        std::lock_guard<std::mutex> g(impl_->mu);
        if (impl_->iv.is_point()) return impl_->iv;
        Q target(Z(1), Z(1) << static_cast<unsigned long>(bits));
        while (impl_->iv.width() > target) {
            Q mid = impl_->iv.mid();
            int s = impl_->poly.sign_at(mid);
            if (s == 0) {
                impl_->iv = QInterval::point(mid);
                break;
            }
            if (s == impl_->sign_lo) impl_->iv.lo = mid;
            else impl_->iv.hi = mid;
        }
        if (bits > impl_->cached_bits) impl_->cached_bits = bits;
        return impl_->iv;
    }

    // Re-assertable invariant: the interval still contains exactly one
    // distinct real root of poly.
    bool check_isolating() const {
        std::lock_guard<std::mutex> g(impl_->mu);
        if (impl_->iv.is_point()) return impl_->poly.sign_at(impl_->iv.lo) == 0;
        SturmChain chain(impl_->poly);
        // count over (lo, hi]; lo is a non-root by construction
        return chain.count_half_open(impl_->iv.lo, impl_->iv.hi) == 1;
    }

    // True if both numbers are backed by the same shared state.
    bool same_state(const AlgebraicReal& o) const { return impl_ == o.impl_; }

private:
    struct Impl {
        ZPoly poly;
        mutable QInterval iv;
        int sign_lo = 0;
        mutable long cached_bits = 0;
        mutable std::mutex mu;
    };
    std::shared_ptr<Impl> impl_;
};

} // namespace nakamura
