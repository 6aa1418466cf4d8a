#include "tcpkit/tcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcpkit/classify.hpp"
#include "tcpkit/errors.hpp"
#include "tcpkit/rng.hpp"

namespace tcpkit {

namespace {

constexpr double kAcceptTol = 1e-8;
constexpr double kDedupTol = 1e-6;

bool same_solution(const Vec& a, const Vec& b) {
    const double scale = 1.0 + std::max(inf_norm(a), inf_norm(b));
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d <= kDedupTol * scale;
}

} // namespace

TcpInstance::TcpInstance(Tensor tensor, Vec rhs) : a(std::move(tensor)), q(std::move(rhs)) {
    if (static_cast<int>(q.size()) != a.dim()) throw Error("TcpInstance: q dimension mismatch");
    if (!all_finite(q)) throw Error("TcpInstance: q has non-finite values");
}

VerifyResult verify_solution(const TcpInstance& inst, const Vec& x, double tol) {
    if (static_cast<int>(x.size()) != inst.a.dim())
        throw Error("verify_solution: x dimension mismatch");
    if (tol <= 0) throw Error("verify_solution: tol must be positive");

    Vec w = map_apply(inst.a, x);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += inst.q[i];

    TcpSolution sol;
    sol.x = x;
    sol.residuals.nonneg_x = std::max(0.0, -min_component(x));
    sol.residuals.nonneg_w = std::max(0.0, -min_component(w));
    sol.residuals.compl_ = std::abs(dot(x, w));
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        if (x[i] > tol) sol.support.push_back(i + 1);

    const bool ok = sol.residuals.nonneg_x <= tol && sol.residuals.nonneg_w <= tol &&
                    sol.residuals.compl_ <= tol * (1.0 + inf_norm(inst.q));
    return {ok, std::move(sol)};
}

// ---------------------------------------------------------------------------
// Support enumeration

namespace {

struct SupportCandidates {
    std::vector<Vec> roots; // in R^{|N|}, all components > 0
    bool exact = true;      // linear solve succeeded (order 2 only)
    long long evals = 0;
    long long iterations = 0;
    int starts = 0;
};

// Damped Newton on F(z) = q_N + B z^{m-1} from one seed. Returns the final
// iterate if it reached ||F||_inf <= ftol.
std::optional<Vec> newton_root(const Tensor& b, const Vec& qn, Vec z, double ftol, int max_iters,
                               SupportCandidates& stats) {
    const int r = b.dim();
    auto fval = [&](const Vec& p) {
        Vec f = map_apply(b, p);
        ++stats.evals;
        for (int i = 0; i < r; ++i) f[i] += qn[i];
        return f;
    };
    Vec f = fval(z);
    double fn = inf_norm(f);
    for (int it = 0; it < max_iters; ++it) {
        ++stats.iterations;
        if (fn <= ftol) return z;
        const Matrix j = map_jacobian(b, z);
        ++stats.evals;
        Vec rhs(r);
        for (int i = 0; i < r; ++i) rhs[i] = -f[i];
        auto d = lu_solve(j, rhs);
        if (!d) d = ridge_lstsq(j, rhs, 1e-10);
        if (!d) return std::nullopt;
        double lambda = 1.0;
        while (lambda > 1e-10) {
            Vec cand(r);
            for (int i = 0; i < r; ++i) cand[i] = z[i] + lambda * (*d)[i];
            if (all_finite(cand)) {
                const Vec fc = fval(cand);
                const double fcn = inf_norm(fc);
                if (fcn < fn || fcn <= ftol) {
                    z = std::move(cand);
                    f = fc;
                    fn = fcn;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (lambda <= 1e-10) return fn <= ftol ? std::optional<Vec>(z) : std::nullopt;
    }
    return fn <= ftol ? std::optional<Vec>(z) : std::nullopt;
}

// Roots of (q + A x^{m-1})_N = 0 restricted to support N. Order 2 uses one
// exact linear solve; otherwise multistart Newton from 4 + |N| positive
// seeds scaled with |q| (roots scale like |q|^{1/(m-1)} by homogeneity).
SupportCandidates support_roots(const Tensor& b, const Vec& qn, std::uint64_t mask,
                                long long eval_budget) {
    SupportCandidates out;
    const int r = b.dim();
    const int m = b.order();
    const double qs = inf_norm(qn);
    const double ftol = 1e-11 * (1.0 + qs);

    if (m == 2) {
        Matrix mat(r, r);
        for (std::int64_t f = 0; f < b.size(); ++f) mat.a[f] = b[f];
        Vec rhs(r);
        for (int i = 0; i < r; ++i) rhs[i] = -qn[i];
        if (const auto z = lu_solve(mat, rhs)) {
            out.roots.push_back(*z);
            out.evals += 1;
            return out;
        }
        out.exact = false; // singular support system; fall through to seeds
    }

    const double scale = std::pow(1.0 + qs, 1.0 / (m - 1));
    const Rng rng = Rng::keyed(0x7C9D5EEDu, mask);
    const int starts = 4 + r;
    out.starts = starts;
    for (int s = 0; s < starts; ++s) {
        if (out.evals >= eval_budget) break;
        Vec z0(r);
        for (int i = 0; i < r; ++i)
            z0[i] = scale * rng.uniform_at(static_cast<std::uint64_t>(s) * r + i, 0.05, 1.0);
        const auto root = newton_root(b, qn, std::move(z0), ftol, 100, out);
        if (!root) continue;
        bool interior = true;
        for (double v : *root)
            if (!(v > kAcceptTol)) interior = false;
        if (!interior) continue;
        bool fresh = true;
        for (const Vec& kept : out.roots)
            if (same_solution(kept, *root)) fresh = false;
        if (fresh && out.roots.size() < 2) out.roots.push_back(*root);
    }
    return out;
}

} // namespace

SolveReport solve_support_enum(const TcpInstance& inst, const SearchBudget& budget) {
    if (budget.max_evals <= 0) throw Error("solve_support_enum: budget must be positive");
    const int n = inst.a.dim();
    const int m = inst.a.order();

    SolveReport rep;
    rep.complete = (m == 2);

    // empty support: x = 0 solves iff q >= 0
    if (min_component(inst.q) >= -kAcceptTol) {
        const VerifyResult vr = verify_solution(inst, Vec(n, 0.0));
        ++rep.evals;
        if (vr.accepted) rep.solutions.push_back(vr.solution);
    }

    const std::vector<std::uint64_t> masks = subset_sweep_order(n);
    const long long per =
        std::max<long long>(budget.max_evals / static_cast<long long>(masks.size()), 256);

    std::vector<SupportCandidates> cands(masks.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(masks.size()); ++i) {
        const IndexSet ns = IndexSet::from_mask(masks[i], n);
        const Tensor b = principal_subtensor(inst.a, ns);
        cands[i] = support_roots(b, restrict_to(inst.q, ns), masks[i], per);
    }

    for (std::size_t i = 0; i < masks.size(); ++i) {
        const SupportCandidates& c = cands[i];
        rep.evals += c.evals;
        rep.stats.iterations += c.iterations;
        rep.stats.starts += c.starts;
        if (!c.exact) rep.complete = false;
        const IndexSet ns = IndexSet::from_mask(masks[i], n);
        int kept_here = 0;
        for (const Vec& z : c.roots) {
            bool interior = true;
            for (double v : z)
                if (!(v > kAcceptTol)) interior = false;
            if (!interior) continue;
            const Vec x = embed(z, ns);
            const VerifyResult vr = verify_solution(inst, x);
            ++rep.evals;
            if (!vr.accepted) continue;
            bool fresh = true;
            for (const TcpSolution& kept : rep.solutions)
                if (same_solution(kept.x, x)) fresh = false;
            if (!fresh) continue;
            rep.solutions.push_back(vr.solution);
            if (++kept_here >= 2) rep.continuum_suspected = true;
        }
    }
    if (rep.continuum_suspected) rep.complete = false;

    // pairwise same-support check across subsets (boundary roots can land on
    // the same support through different N)
    for (std::size_t i = 0; i + 1 < rep.solutions.size() && !rep.continuum_suspected; ++i)
        for (std::size_t j = i + 1; j < rep.solutions.size(); ++j)
            if (rep.solutions[i].support == rep.solutions[j].support &&
                !rep.solutions[i].support.empty())
                rep.continuum_suspected = true;

    if (rep.evals > budget.max_evals) {
        rep.budget_exhausted = true;
        rep.note = "budget exhausted; report may be partial";
        if (m == 2) rep.complete = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Fischer-Burmeister semismooth Newton

namespace {

double fb_phi(double a, double b) { return a + b - std::sqrt(a * a + b * b); }

} // namespace

SolveReport solve_fb_newton(const TcpInstance& inst, const Vec& x0, const SearchBudget& budget) {
    if (!all_finite(x0)) throw Error("solve_fb_newton: x0 must be finite");
    if (static_cast<int>(x0.size()) != inst.a.dim())
        throw Error("solve_fb_newton: x0 dimension mismatch");

    const int n = inst.a.dim();
    SolveReport rep;
    rep.stats.starts = 1;

    const double qs = inf_norm(inst.q);
    const double ftol = 1e-11 * (1.0 + qs);

    Vec x = x0;
    auto residual = [&](const Vec& p) {
        Vec w = map_apply(inst.a, p);
        ++rep.evals;
        Vec phi(n);
        for (int i = 0; i < n; ++i) {
            w[i] += inst.q[i];
            phi[i] = fb_phi(p[i], w[i]);
        }
        return std::pair<Vec, Vec>(std::move(phi), std::move(w));
    };

    auto [phi, w] = residual(x);
    double merit = 0.5 * dot(phi, phi);

    const int max_iters = 200;
    for (int it = 0; it < max_iters; ++it) {
        ++rep.stats.iterations;
        if (inf_norm(phi) <= ftol) break;
        if (rep.evals >= budget.max_evals) {
            rep.budget_exhausted = true;
            break;
        }

        // element of the B-subdifferential: rows scale (I, J_w)
        const Matrix jw = map_jacobian(inst.a, x);
        ++rep.evals;
        Matrix v(n, n);
        for (int i = 0; i < n; ++i) {
            const double rho = std::sqrt(x[i] * x[i] + w[i] * w[i]);
            double da, db;
            if (rho > 1e-14) {
                da = 1.0 - x[i] / rho;
                db = 1.0 - w[i] / rho;
            } else {
                da = db = 1.0 - 1.0 / std::sqrt(2.0);
            }
            for (int k = 0; k < n; ++k) v(i, k) = db * jw(i, k);
            v(i, i) += da;
        }

        Vec rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = -phi[i];
        auto d = lu_solve(v, rhs);
        if (!d) d = ridge_lstsq(v, rhs, 1e-10);

        // gradient of the merit function, for the descent test and fallback
        Vec gtheta(n, 0.0);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) gtheta[k] += v(i, k) * phi[i];

        bool use_grad = !d;
        if (d) {
            const double dir = dot(gtheta, *d);
            if (!(dir < 0.0)) use_grad = true;
        }
        Vec dir;
        if (use_grad) {
            dir = gtheta;
            for (double& g : dir) g = -g;
        } else {
            dir = *d;
        }
        const double slope = dot(gtheta, dir);

        double t = 1.0;
        bool stepped = false;
        while (t > 1e-12) {
            Vec cand(n);
            for (int i = 0; i < n; ++i) cand[i] = x[i] + t * dir[i];
            if (all_finite(cand)) {
                auto [phic, wc] = residual(cand);
                const double mc = 0.5 * dot(phic, phic);
                if (mc <= merit + 1e-4 * t * slope || mc < merit * (1.0 - 1e-12)) {
                    x = std::move(cand);
                    phi = std::move(phic);
                    w = std::move(wc);
                    merit = mc;
                    stepped = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!stepped) break; // stalled
    }

    if (inf_norm(phi) <= 10 * ftol) {
        Vec clipped = x;
        for (double& v2 : clipped) v2 = std::max(v2, 0.0);
        const VerifyResult vr = verify_solution(inst, clipped);
        ++rep.evals;
        if (vr.accepted) {
            rep.solutions.push_back(vr.solution);
            return rep;
        }
    }
    rep.note = "did not converge; final merit " + std::to_string(merit);
    return rep;
}

SolveReport solve_auto(const TcpInstance& inst, const SearchBudget& budget) {
    SolveReport rep = solve_support_enum(inst, budget);
    if (!rep.solutions.empty()) return rep;

    // FB polish from a deterministic seed ladder
    const int n = inst.a.dim();
    const int m = inst.a.order();
    std::vector<Vec> seeds;
    seeds.push_back(Vec(n, 0.0));
    Vec guess(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double d = std::max(std::abs(inst.a.diagonal_entry(i)), 1.0);
        guess[i] = std::pow(std::max(0.0, -inst.q[i]) / d, 1.0 / (m - 1));
    }
    seeds.push_back(guess);
    seeds.push_back(Vec(n, 1.0));
    seeds.push_back(Vec(n, std::pow(1.0 + inf_norm(inst.q), 1.0 / (m - 1))));

    for (const Vec& s : seeds) {
        SolveReport fb = solve_fb_newton(inst, s, budget);
        rep.evals += fb.evals;
        rep.stats.iterations += fb.stats.iterations;
        rep.stats.starts += fb.stats.starts;
        if (!fb.solutions.empty()) {
            for (TcpSolution& sol : fb.solutions) {
                bool fresh = true;
                for (const TcpSolution& kept : rep.solutions)
                    if (same_solution(kept.x, sol.x)) fresh = false;
                if (fresh) rep.solutions.push_back(std::move(sol));
            }
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Counterexamples and the Q-tensor probe

Vec counterexample_q(const Tensor& a, const Vec& witness, const IndexSet& n,
                     CounterexampleMode mode, double tol) {
    if (static_cast<int>(witness.size()) != a.dim())
        throw Error("counterexample_q: witness dimension mismatch");

    // revalidate: nonnegative, supported inside N, nonzero, and feasible for
    // the matching subset system
    bool nonzero = false;
    for (int i = 0; i < a.dim(); ++i) {
        if (witness[i] < -1e-12) throw Error("counterexample_q: witness has negative component");
        if (witness[i] > 1e-12) {
            nonzero = true;
            if (!n.contains(i + 1))
                throw Error("counterexample_q: witness supported outside the index set");
        }
    }
    if (!nonzero) throw Error("counterexample_q: witness is zero");

    const Vec v = map_apply(a, witness);
    for (int k = 0; k < n.size(); ++k) {
        const double vi = v[n[k] - 1];
        if (mode == CounterexampleMode::Weak ? !(vi < -tol / 2) : !(vi <= tol / 2))
            throw Error("counterexample_q: witness fails revalidation");
    }

    Vec q(a.dim(), 0.0);
    for (int i = 0; i < a.dim(); ++i) {
        if (n.contains(i + 1))
            q[i] = mode == CounterexampleMode::Weak ? -v[i] : std::max(0.0, -v[i]);
        else
            q[i] = std::max(0.0, -v[i]) + 1.0;
    }
    return q;
}

ProbeReport q_tensor_probe(const Tensor& a, int num_samples, std::uint64_t seed,
                           const SearchBudget& budget) {
    if (num_samples < 1) throw Error("q_tensor_probe: num_samples must be >= 1");
    const int n = a.dim();
    ProbeReport rep;
    rep.samples = num_samples;

    const Rng rq = Rng::keyed(seed, 11);
    const Rng rmask = Rng::keyed(seed, 13);

    static const char* kKinds[] = {"pos", "neg", "mixed", "nonneg"};
    for (int s = 0; s < num_samples; ++s) {
        const int kind = s % 4;
        Vec q(n);
        for (int i = 0; i < n; ++i) {
            const std::uint64_t at = static_cast<std::uint64_t>(s) * n + i;
            switch (kind) {
            case 0: q[i] = rq.uniform_at(at, 0.1, 2.0); break;
            case 1: q[i] = rq.uniform_at(at, -2.0, -0.1); break;
            case 2: q[i] = rq.uniform_at(at, -2.0, 2.0); break;
            default:
                q[i] = rq.uniform_at(at, 0.1, 2.0);
                if (rmask.u01_at(at) < 1.0 / 3.0) q[i] = 0.0;
                break;
            }
        }
        const TcpInstance inst(a, q);
        const SolveReport sr = solve_auto(inst, budget);
        if (!sr.solutions.empty()) {
            ++rep.solved;
        } else {
            ProbeSample ps;
            ps.q = q;
            ps.kind = kKinds[kind];
            ps.solved = false;
            ps.disproven = sr.complete; // exhaustive order-2 path found nothing
            rep.unsolved.push_back(std::move(ps));
        }
    }
    return rep;
}

} // namespace tcpkit
