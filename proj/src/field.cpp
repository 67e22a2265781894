#include "rieszgas/field.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace rieszgas {

void ExternalField::check_dim(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != d_)
        throw usage_error("field: point dimension mismatch");
}

ExternalField ExternalField::quadratic(int d) {
    return radial_profile(
        d, [](double r) { return r * r; }, [](double r) { return 2.0 * r; },
        [](double) { return 2.0; }, "quadratic");
}

ExternalField ExternalField::power(int d, double p) {
    if (p <= 0.0) throw usage_error("power field: p must be positive");
    return radial_profile(
        d, [p](double r) { return std::pow(r, p); },
        [p](double r) { return p * std::pow(r, p - 1.0); },
        [p](double r) { return p * (p - 1.0) * std::pow(r, p - 2.0); },
        "power");
}

ExternalField ExternalField::radial_profile(int d, RadialFn v, RadialFn dv,
                                            RadialFn ddv, std::string name) {
    if (d < 1) throw usage_error("field: d must be >= 1");
    if (!v || !dv) throw usage_error("radial field: v and dv are required");
    ExternalField f;
    f.d_ = d;
    f.radial_ = true;
    f.name_ = std::move(name);
    f.v_ = std::move(v);
    f.dv_ = std::move(dv);
    f.ddv_ = std::move(ddv);
    return f;
}

ExternalField ExternalField::tabulated_radial(int d, std::vector<double> r,
                                              std::vector<double> V) {
    if (r.size() < 2 || r.size() != V.size())
        throw usage_error("tabulated field: need matching r/V arrays, length >= 2");
    if (!std::is_sorted(r.begin(), r.end()))
        throw usage_error("tabulated field: radii must be increasing");
    ExternalField f;
    f.d_ = d;
    f.radial_ = true;
    f.name_ = "table";
    auto rr = std::make_shared<std::vector<double>>(std::move(r));
    auto vv = std::make_shared<std::vector<double>>(std::move(V));
    auto locate = [rr](double x) {
        auto it = std::upper_bound(rr->begin(), rr->end(), x);
        std::size_t i = it - rr->begin();
        if (i == 0) i = 1;
        if (i == rr->size()) i = rr->size() - 1;
        return i; // segment [i-1, i]
    };
    std::shared_ptr<bool> extrap = f.extrapolated_;
    f.v_ = [rr, vv, locate, extrap](double x) {
        if (x < rr->front() || x > rr->back()) *extrap = true;
        std::size_t i = locate(x);
        double t = (x - (*rr)[i - 1]) / ((*rr)[i] - (*rr)[i - 1]);
        return (1.0 - t) * (*vv)[i - 1] + t * (*vv)[i];
    };
    f.dv_ = [rr, vv, locate, extrap](double x) {
        if (x < rr->front() || x > rr->back()) *extrap = true;
        std::size_t i = locate(x);
        return ((*vv)[i] - (*vv)[i - 1]) / ((*rr)[i] - (*rr)[i - 1]);
    };
    return f;
}

ExternalField ExternalField::custom(int d, ValueFn V, GradFn grad) {
    if (!V || !grad) throw usage_error("custom field: V and grad are required");
    ExternalField f;
    f.d_ = d;
    f.radial_ = false;
    f.name_ = "custom";
    f.value_ = std::move(V);
    f.grad_ = std::move(grad);
    return f;
}

double ExternalField::value(std::span<const double> x) const {
    check_dim(x);
    if (!radial_) return value_(x);
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return v_(std::sqrt(r2));
}

void ExternalField::gradient(std::span<const double> x, std::span<double> out) const {
    check_dim(x);
    if (out.size() != x.size()) throw usage_error("field gradient: bad output size");
    if (!radial_) {
        grad_(x, out);
        return;
    }
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    const double r = std::sqrt(r2);
    if (r == 0.0) {
        // smooth at the origin iff v'(0) = 0
        if (dv_(0.0) != 0.0)
            throw singularity_error("radial field gradient undefined at origin");
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    const double coef = dv_(r) / r;
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = coef * x[k];
}

double ExternalField::v(double r) const {
    if (!radial_) throw usage_error("field: not radial");
    return v_(r);
}

double ExternalField::dv(double r) const {
    if (!radial_) throw usage_error("field: not radial");
    return dv_(r);
}

double ExternalField::ddv(double r) const {
    if (!ddv_) throw usage_error("field: second derivative not supplied");
    return ddv_(r);
}

double ExternalField::w(double r) const {
    return std::pow(r, d_ - 1) * dv(r);
}

} // namespace rieszgas
