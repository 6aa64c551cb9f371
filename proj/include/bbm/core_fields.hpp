#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbm {

enum class DomainKind { Circle, Line };

/// A uniform 1-D grid. Circle: [0, length) periodic. Line: [-L, L) with
/// L = half_length, treated as periodic with period 2L on the spectral path.
class Domain {
public:
    static constexpr std::size_t kMinPoints = 8;

    DomainKind kind() const { return kind_; }
    std::size_t n_points() const { return n_; }
    /// Length of the periodic cell: `length` for Circle, 2L for Line.
    double period() const { return period_; }
    double dx() const { return period_ / static_cast<double>(n_); }
    double left() const { return kind_ == DomainKind::Circle ? 0.0 : -0.5 * period_; }
    double point(std::size_t j) const { return left() + static_cast<double>(j) * dx(); }
    std::vector<double> grid() const;

    /// Angular wavenumber 2*pi*k/period of integer mode k.
    double wavenumber(long k) const;

    bool operator==(const Domain&) const = default;

private:
    friend Domain make_domain(DomainKind, double, std::size_t);
    Domain(DomainKind kind, double period, std::size_t n) : kind_(kind), period_(period), n_(n) {}

    DomainKind kind_;
    double period_;
    std::size_t n_;
};

/// `length` is the circle length, or the half-width L for a Line domain.
Domain make_domain(DomainKind kind, double length, std::size_t n_points);

class Field {
public:
    Field(Domain domain, std::vector<double> values);
    static Field zeros(const Domain& domain);
    static Field sample(const Domain& domain, const std::function<double(double)>& fn);

    const Domain& domain() const { return domain_; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t j) const { return values_[j]; }
    double& operator[](std::size_t j) { return values_[j]; }

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);

    bool all_finite() const;
    double max_abs() const;

private:
    Domain domain_;
    std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
/// Pointwise product.
Field hadamard(const Field& a, const Field& b);
/// a + s*b
Field axpy(const Field& a, double s, const Field& b);

/// Coefficients c_k for k = 0..N/2 with u(x_j) = sum_k c_k exp(i k' (x_j - left)),
/// k' the angular wavenumber. Negative modes are the conjugates.
class SpectralField {
public:
    SpectralField(Domain domain, std::vector<std::complex<double>> half);

    const Domain& domain() const { return domain_; }
    /// Coefficient at any integer mode |k| <= N/2 (Hermitian extension).
    std::complex<double> at(long k) const;
    std::span<const std::complex<double>> half_spectrum() const { return half_; }
    std::span<std::complex<double>> half_spectrum() { return half_; }
    std::size_t n_modes() const { return half_.size(); }

private:
    Domain domain_;
    std::vector<std::complex<double>> half_;
};

SpectralField to_spectral(const Field& field);
Field from_spectral(const SpectralField& sf);

/// Applies m(kappa) to every mode, kappa the angular wavenumber.
/// The Nyquist mode is zeroed when `odd` is set (odd multipliers of real fields).
Field apply_multiplier(const Field& field, const std::function<std::complex<double>(double)>& m,
                       bool odd = false);

Field derivative(const Field& field, int order);

/// Rectangle rule dx * sum(values); spectrally exact for periodic band-limited integrands.
double integrate(const Field& field);

/// Value of the trigonometric interpolant at an arbitrary x.
double spectral_eval(const SpectralField& sf, double x);
/// Exact integral of the trigonometric interpolant over [a, b].
double spectral_integral(const SpectralField& sf, double a, double b);

struct NormKind {
    enum class Tag { L2, Linf, Hs };
    Tag tag = Tag::L2;
    double s = 0.0;

    static NormKind l2() { return {Tag::L2, 0.0}; }
    static NormKind linf() { return {Tag::Linf, 0.0}; }
    static NormKind hs(double s);
};

/// ||u||_{H^s}^2 = period * sum_k (1 + kappa_k^2)^s |c_k|^2, so that
/// ||u||_{H^1}^2 = int (u^2 + u_x^2) dx.
double norm(const Field& field, NormKind kind);

/// Fraction of spectral energy in the top third of the resolved modes.
double top_third_energy_fraction(const Field& field);

/// CSV snapshot: optional comment lines, then header `x,u`, 17 significant digits.
void write_snapshot_csv(std::ostream& os, const Field& field, const std::string& comment = {});

}  // namespace bbm
