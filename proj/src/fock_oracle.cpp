#include "anderson/fock_oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "anderson/errors.hpp"
#include "anderson/propagator.hpp"
#include "anderson/rng.hpp"

namespace anderson {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

int TwoParticleBasis::index_of(int n, int m) const {
    if (n > m) std::swap(n, m);
    if (n < 0 || m >= sites) return -1;
    if (fermionic) {
        if (n == m) return -1;
        // pairs (n,m), n<m, lexicographic: offset of row n is
        // n*sites - n(n+1)/2 - n ... computed directly below
        return n * sites - n * (n + 1) / 2 + (m - n - 1);
    }
    return n * sites - n * (n - 1) / 2 + (m - n);
}

TwoParticleBasis make_two_particle_basis(int n_sites, bool fermionic) {
    if (n_sites < 2)
        throw ConfigError("two-particle basis: need at least 2 sites");
    if (n_sites > 64)
        throw ResourceError(
            "two-particle basis: refusing more than 64 sites (oracle is a "
            "small-instance fixture)");
    TwoParticleBasis basis;
    basis.sites = n_sites;
    basis.fermionic = fermionic;
    for (int n = 0; n < n_sites; ++n)
        for (int m = fermionic ? n + 1 : n; m < n_sites; ++m)
            basis.pairs.emplace_back(n, m);
    return basis;
}

Matrix fock_hamiltonian(const Hamiltonian& h, const TwoParticleBasis& basis) {
    if (h.size() != basis.sites)
        throw ConfigError("fock_hamiltonian: size mismatch");
    const Matrix& h1 = h.elements;
    const double sign = basis.fermionic ? -1.0 : 1.0;
    const int d = basis.dimension();

    // c_nm = 1/sqrt(2) for doubly occupied boson pairs, 1 otherwise
    auto norm = [&](int n, int m) { return n == m ? kInvSqrt2 : 1.0; };

    Matrix h2 = Matrix::Zero(d, d);
    for (int col = 0; col < d; ++col) {
        const auto [n, m] = basis.pairs[col];
        for (int row = 0; row < d; ++row) {
            const auto [p, q] = basis.pairs[row];
            double v = 0.0;
            if (q == m) v += h1(p, n);
            if (p == m) v += sign * h1(q, n);
            if (q == n) v += sign * h1(p, m);
            if (p == n) v += h1(q, m);
            h2(row, col) = norm(n, m) * norm(p, q) * v;
        }
    }
    return h2;
}

ComplexVector prepare_input(const TwoParticleInput& input,
                            const TwoParticleBasis& basis) {
    validate(input, basis.sites);
    if (input.kind == InputKind::separable_fermion && !basis.fermionic)
        throw ConfigError("prepare_input: fermion input needs a fermionic basis");
    if (input.kind != InputKind::separable_fermion && basis.fermionic)
        throw ConfigError("prepare_input: bosonic input needs a bosonic basis");

    ComplexVector psi = ComplexVector::Zero(basis.dimension());
    if (input.kind == InputKind::path_entangled) {
        const Complex phase(std::cos(input.theta), std::sin(input.theta));
        psi(basis.index_of(input.site_a, input.site_a)) = kInvSqrt2;
        psi(basis.index_of(input.site_b, input.site_b)) = kInvSqrt2 * phase;
        return psi;
    }
    // a+_A a+_B |0> with A>B equals -(a+_B a+_A)|0> for fermions; the basis
    // stores the ordered pair, so track the global sign.
    double amp = 1.0;
    if (input.kind == InputKind::separable_fermion && input.site_a > input.site_b)
        amp = -1.0;
    psi(basis.index_of(input.site_a, input.site_b)) = amp;
    return psi;
}

CorrelationMatrix fock_evolve_correlation(const Hamiltonian& h,
                                          const TwoParticleInput& input,
                                          double t) {
    const auto basis =
        make_two_particle_basis(h.size(), input.kind == InputKind::separable_fermion);
    const ComplexVector psi0 = prepare_input(input, basis);

    // psi(t) = e^{+i H2 t} psi0, consistent with U = e^{+iHt} one-particle
    const SpectralDecomposition sd = decompose(fock_hamiltonian(h, basis));
    const int d = basis.dimension();
    ComplexVector phases(d);
    for (int k = 0; k < d; ++k) {
        const double a = sd.eigenvalues(k) * t;
        phases(k) = Complex(std::cos(a), std::sin(a));
    }
    const ComplexVector psi =
        sd.eigenvectors.cast<Complex>() *
        phases.cwiseProduct(sd.eigenvectors.transpose().cast<Complex>() * psi0);

    const int n = h.size();
    CorrelationMatrix gamma;
    gamma.values = Matrix::Zero(n, n);
    gamma.input = input;
    gamma.time = t;
    for (int q = 0; q < n; ++q) {
        for (int r = q; r < n; ++r) {
            const int idx = basis.index_of(q, r);
            if (idx < 0) continue;  // fermion diagonal
            const double p = std::norm(psi(idx));
            if (q == r) {
                gamma.values(q, q) = 2.0 * p;  // <n(n-1)> on a doubly occupied site
            } else {
                gamma.values(q, r) = p;
                gamma.values(r, q) = p;
            }
        }
    }
    return gamma;
}

std::string OracleCheckReport::summary() const {
    std::ostringstream os;
    os << (passed ? "PASS" : "FAIL") << ": " << trials
       << " trials, worst |Gamma_formula - Gamma_fock| = " << worst_error;
    if (worst_q >= 0)
        os << " at (q=" << worst_q << ", r=" << worst_r << ", t=" << worst_time
           << ", " << worst_variant << ")";
    return os.str();
}

OracleCheckReport run_oracle_check(int size, int trials, std::uint64_t seed,
                                   const CorrelationFormula& formula) {
    if (size < 2 || size > 8)
        throw ConfigError("oracle check: size must be in [2, 8]");
    if (trials < 1) throw ConfigError("oracle check: trials must be >= 1");

    const CorrelationFormula eval =
        formula ? formula
                : [](const Propagator& u, const TwoParticleInput& in) {
                      return correlation_single(u, in);
                  };

    LatticeSpec spec;
    spec.dimension = 1;
    spec.extent = {size, 1};
    spec.base_tunneling = 1.0;
    spec.disorder_kind = DisorderKind::both;
    spec.disorder_strength = 0.8;

    const double times[] = {0.5, 2.0, 8.0};
    const double pi = std::numbers::pi;
    std::vector<TwoParticleInput> variants;
    variants.push_back({InputKind::separable_boson, 0, 1, 0.0});
    variants.push_back({InputKind::separable_fermion, 0, 1, 0.0});
    variants.push_back({InputKind::path_entangled, 0, 1, 0.0});
    variants.push_back({InputKind::path_entangled, 0, 1, pi / 2.0});
    variants.push_back({InputKind::path_entangled, 0, 1, pi});

    OracleCheckReport report;
    report.trials = trials;
    const char* names[] = {"boson", "fermion", "path_entangled"};
    for (int i = 0; i < trials; ++i) {
        const Hamiltonian h = build_hamiltonian(spec, derive_seed(seed, i));
        const double t = times[i % 3];
        TwoParticleInput input = variants[i % variants.size()];
        // vary the input sites with the trial as well
        input.site_a = i % size;
        input.site_b = (i + 1 + (i / size) % (size - 1)) % size;
        if (input.site_a == input.site_b) input.site_b = (input.site_b + 1) % size;

        const CorrelationMatrix ours = eval(evolve(decompose(h), t), input);
        const CorrelationMatrix oracle = fock_evolve_correlation(h, input, t);
        const Matrix diff = (ours.values - oracle.values).cwiseAbs();
        int q, r;
        const double err = diff.maxCoeff(&q, &r);
        if (err > report.worst_error) {
            report.worst_error = err;
            report.worst_q = q;
            report.worst_r = r;
            report.worst_time = t;
            report.worst_variant = names[static_cast<int>(input.kind)];
        }
        if (err >= 1e-9) report.passed = false;
    }
    return report;
}

}  // namespace anderson
