#include "cpverify/lattice.hpp"

#include <cmath>

namespace cpv {

DiamondLattice::DiamondLattice(int cols, int rows, double theta, Boundary b, int fixed_value)
    : cols_(cols), rows_(rows), theta_(theta), boundary_(b), fixed_value_(fixed_value) {
    if (cols < 1 || rows < 1) throw DomainError("DiamondLattice: need at least one cell per axis");
    if (!(theta > 0.0) || !(theta < pi)) throw DomainError("DiamondLattice: embedding angle in (0, pi)");
    spin_id_.assign(size_t(cols_ + 1) * (rows_ + 1), -1);
    for (int i = 0; i <= cols_; ++i)
        for (int j = 0; j <= rows_; ++j)
            if (mod(i + j, 2) == 0) {
                spin_id_[size_t(i) * (rows_ + 1) + j] = int(spins_.size());
                spins_.push_back({i, j});
            }
    cell_edge_.assign(size_t(cols_) * rows_, -1);
    for (int ci = 0; ci < cols_; ++ci)
        for (int cj = 0; cj < rows_; ++cj) {
            Edge e;
            if (mod(ci + cj, 2) == 0) {
                e = {{ci, cj}, {ci + 1, cj + 1}, EdgeKind::W, 0};
            } else {
                e = {{ci, cj + 1}, {ci + 1, cj}, EdgeKind::Wbar, 0};
            }
            cell_edge_[size_t(ci) * rows_ + cj] = int(edges_.size());
            edges_.push_back(e);
        }
}

cplx DiamondLattice::position(GridPt p) const {
    const cplx e1 = std::exp(iu * (theta_ / 2));   // up-right lattice vector
    const cplx e2 = std::exp(-iu * (theta_ / 2));  // down-right
    return double(p.i) * e2 + double(p.j) * e1;
}

int DiamondLattice::spin_id(GridPt p) const {
    if (!in_grid(p)) return -1;
    return spin_id_[size_t(p.i) * (rows_ + 1) + p.j];
}

int DiamondLattice::edge_at_cell(int ci, int cj) const {
    if (ci < 0 || ci >= cols_ || cj < 0 || cj >= rows_)
        throw DomainError("edge_at_cell: cell outside the lattice");
    return cell_edge_[size_t(ci) * rows_ + cj];
}

GridPt DiamondLattice::leftmost_dual(int height) const {
    if (mod(height, 2) == 0) throw DomainError("leftmost_dual: spin rows have even height");
    const int i0 = std::max(0, -height);
    GridPt p{i0, i0 + height};
    if (!is_dual(p)) throw DomainError("leftmost_dual: height outside the lattice");
    return p;
}

GridPt DiamondLattice::top_corner_spin() const {
    GridPt p{0, rows_};
    if (!is_spin(p)) p = GridPt{1, rows_};
    return p;
}

// Dual-lattice steps are (+1,+1) right, (-1,-1) left, (-1,+1) up, (+1,-1)
// down; each one crosses the edge of exactly one cell.
struct StepInfo {
    int edge;
    CrossDir dir;
};

static StepInfo classify_step(const DiamondLattice& lat, GridPt from, GridPt to) {
    const int di = to.i - from.i, dj = to.j - from.j;
    if (!lat.is_dual(from) || !lat.is_dual(to)) throw DomainError("tail path: steps run on dual sites");
    if (di == 1 && dj == 1) return {lat.edge_at_cell(from.i, from.j), CrossDir::right};
    if (di == -1 && dj == -1) return {lat.edge_at_cell(from.i - 1, from.j - 1), CrossDir::left};
    if (di == -1 && dj == 1) return {lat.edge_at_cell(from.i - 1, from.j), CrossDir::up};
    if (di == 1 && dj == -1) return {lat.edge_at_cell(from.i, from.j - 1), CrossDir::down};
    throw DomainError("tail path: consecutive dual sites must be adjacent");
}

SpinSystem build_system(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                        const InsertionSet& ins) {
    if (tables.empty()) throw DomainError("build_system: no weight tables");
    const int n = tables[0].n();
    SpinSystem sys;
    sys.n = n;
    const int nsites = lat.num_spins();
    sys.site_factor.assign(nsites, {});
    sys.fixed.assign(nsites, -1);
    sys.layer_of.resize(nsites);
    for (int sid = 0; sid < nsites; ++sid) {
        const GridPt p = lat.spin_site(sid);
        sys.layer_of[sid] = p.i;
        if (lat.boundary() == Boundary::fixed && lat.is_boundary(p))
            sys.fixed[sid] = mod(lat.fixed_value(), n);
    }
    sys.nlayers = lat.cols() + 1;

    sys.etabs.reserve(lat.edges().size());
    for (const auto& e : lat.edges()) {
        SpinSystem::ETab t;
        t.a = lat.spin_id(e.a);
        t.b = lat.spin_id(e.b);
        t.val.resize(n);
        const WeightTable& wt = tables.at(e.pair);
        for (int d = 0; d < n; ++d) t.val[d] = e.kind == EdgeKind::W ? wt.w(d) : wt.wbar(d);
        sys.etabs.push_back(std::move(t));
    }

    for (const auto& [site, power] : ins.x_powers) {
        const int sid = lat.spin_id(site);
        if (sid < 0) throw DomainError("InsertionSet: X insertion must sit on a spin site");
        auto& f = sys.site_factor[sid];
        if (f.empty()) f.assign(n, 1.0);
        const ModelParams& mp = tables[0].r().params();
        for (int a = 0; a < n; ++a) f[a] *= std::pow(mp.omega, double(power * a));
    }

    for (const auto& tail : ins.tails) {
        for (size_t k = 0; k + 1 < tail.path.size(); ++k) {
            const StepInfo st = classify_step(lat, tail.path[k], tail.path[k + 1]);
            const auto& e = lat.edges()[st.edge];
            const WeightTable& wt = tables.at(e.pair);
            const CrossEffect ce = disorder_cross(wt.r(), wt.s(), e.kind, st.dir, tail.variant);
            auto& val = sys.etabs[st.edge].val;
            std::vector<cplx> nv(n);
            for (int d = 0; d < n; ++d) nv[d] = ce.factor * val[mod(d + ce.shift, n)];
            val = std::move(nv);
        }
    }
    return sys;
}

// ---- engine (a): raw enumeration over spin configurations ----

static cplx enumerate_sum(const SpinSystem& sys, bool parallel) {
    const int n = sys.n;
    std::vector<int> free_sites;
    for (size_t s = 0; s < sys.fixed.size(); ++s)
        if (sys.fixed[s] < 0) free_sites.push_back(int(s));
    const int nfree = int(free_sites.size());
    double total_ld = std::pow(double(n), nfree);
    if (total_ld > double(1 << 26)) throw DomainError("enumeration: configuration space too large");
    const long total = long(total_ld);

    std::vector<int> base(sys.fixed.size(), 0);
    for (size_t s = 0; s < sys.fixed.size(); ++s)
        if (sys.fixed[s] >= 0) base[s] = sys.fixed[s];

    auto weight_of = [&](std::vector<int>& spin, long idx) {
        for (int f = 0; f < nfree; ++f) {
            spin[free_sites[f]] = int(idx % n);
            idx /= n;
        }
        cplx w = 1.0;
        for (const auto& e : sys.etabs) w *= e.val[mod(spin[e.a] - spin[e.b], n)];
        for (size_t s = 0; s < sys.site_factor.size(); ++s)
            if (!sys.site_factor[s].empty()) w *= sys.site_factor[s][spin[s]];
        return w;
    };

    // fixed-size blocks summed serially, block partials combined in index
    // order: the result is independent of the thread count
    const long block = 4096;
    const long nblocks = (total + block - 1) / block;
    std::vector<cplx> partial(nblocks, cplx{});
#pragma omp parallel for schedule(static) if (parallel)
    for (long bk = 0; bk < nblocks; ++bk) {
        std::vector<int> spin = base;
        cplx acc = 0;
        const long hi = std::min(total, (bk + 1) * block);
        for (long idx = bk * block; idx < hi; ++idx) acc += weight_of(spin, idx);
        partial[bk] = acc;
    }
    cplx z = 0;
    for (const auto& v : partial) z += v;
    return z;
}

// ---- engine (b): layer-by-layer contraction ----

static cplx contract_sum(const SpinSystem& sys, bool parallel) {
    const int n = sys.n;
    std::vector<std::vector<int>> layer_sites(sys.nlayers);
    for (size_t s = 0; s < sys.layer_of.size(); ++s) layer_sites[sys.layer_of[s]].push_back(int(s));
    std::vector<std::vector<const SpinSystem::ETab*>> layer_edges(sys.nlayers);
    for (const auto& e : sys.etabs) {
        const int la = sys.layer_of[e.a], lb = sys.layer_of[e.b];
        if (std::abs(la - lb) != 1) throw DomainError("contract: edge spans non-adjacent layers");
        layer_edges[std::min(la, lb)].push_back(&e);
    }

    auto domain = [&](int site) { return sys.fixed[site] >= 0 ? 1 : n; };
    auto value = [&](int site, int digit) { return sys.fixed[site] >= 0 ? sys.fixed[site] : digit; };

    std::vector<int> spin(sys.layer_of.size(), 0);
    auto layer_states = [&](int l) {
        long st = 1;
        for (int s : layer_sites[l]) st *= domain(s);
        return st;
    };
    auto decode = [&](int l, long idx, std::vector<int>& out) {
        for (int s : layer_sites[l]) {
            const int d = domain(s);
            out[s] = value(s, int(idx % d));
            idx /= d;
        }
    };

    const long st0 = layer_states(0);
    std::vector<cplx> vec(st0);
    std::vector<int> sp(sys.layer_of.size(), 0);
    for (long c = 0; c < st0; ++c) {
        decode(0, c, sp);
        cplx w = 1.0;
        for (int s : layer_sites[0])
            if (!sys.site_factor[s].empty()) w *= sys.site_factor[s][sp[s]];
        vec[c] = w;
    }

    for (int l = 0; l + 1 < sys.nlayers; ++l) {
        const long stn = layer_states(l + 1);
        const long stc = layer_states(l);
        std::vector<cplx> next(stn);
#pragma omp parallel for schedule(static) if (parallel)
        for (long cn = 0; cn < stn; ++cn) {
            std::vector<int> loc(sys.layer_of.size(), 0);
            decode(l + 1, cn, loc);
            cplx sitew = 1.0;
            for (int s : layer_sites[l + 1])
                if (!sys.site_factor[s].empty()) sitew *= sys.site_factor[s][loc[s]];
            cplx acc = 0;
            for (long cc = 0; cc < stc; ++cc) {
                decode(l, cc, loc);
                cplx w = 1.0;
                for (const auto* e : layer_edges[l]) w *= e->val[mod(loc[e->a] - loc[e->b], n)];
                acc += vec[cc] * w;
            }
            next[cn] = sitew * acc;
        }
        vec = std::move(next);
    }

    cplx z = 0;
    for (const auto& v : vec) z += v;
    return z;
}

cplx partition_sum(const SpinSystem& sys, Engine e) {
    switch (e) {
        case Engine::enumerate_serial: return enumerate_sum(sys, false);
        case Engine::enumerate_omp: return enumerate_sum(sys, true);
        case Engine::contract_serial: return contract_sum(sys, false);
        case Engine::contract_omp: return contract_sum(sys, true);
    }
    throw DomainError("partition_sum: bad engine");
}

cplx partition_function(const DiamondLattice& lat, const std::vector<WeightTable>& tables, Engine e) {
    return partition_sum(build_system(lat, tables), e);
}

cplx expectation(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                 const InsertionSet& ins, Engine e) {
    const cplx z = partition_sum(build_system(lat, tables), e);
    if (std::abs(z) < 1e-280) throw DegeneratePartition("expectation: partition function vanishes");
    return partition_sum(build_system(lat, tables, ins), e) / z;
}

double check_path_independence(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                               const InsertionSet& base, const TailSpec& alt, Engine e) {
    if (base.tails.empty()) throw DomainError("check_path_independence: no tail in base insertion");
    if (!(base.tails[0].path.front() == alt.path.front()) ||
        !(base.tails[0].path.back() == alt.path.back()))
        throw DomainError("check_path_independence: paths must share both endpoints");
    InsertionSet other = base;
    other.tails[0] = alt;
    const cplx v1 = expectation(lat, tables, base, e);
    const cplx v2 = expectation(lat, tables, other, e);
    return std::abs(v1 - v2) / std::max(std::abs(v1), 1e-30);
}

// ---- transfer matrix and spin chain ----

CMat transfer_matrix(const CurvePoint& r, const CurvePoint& s, int L) {
    const int n = r.params().n;
    double dim_ld = std::pow(double(n), L);
    if (dim_ld > 4096.0) throw DomainError("transfer_matrix: dense cap exceeded");
    const int dim = int(dim_ld);
    const WeightTable wt(r, s);

    // One W row and one Wbar row; with this pairing the family commutes at
    // fixed vertical rapidity, degenerates to the cyclic translation at
    // r = s, and its u_r expansion reproduces the spin-chain Hamiltonian.
    CMat t(dim, dim);
    std::vector<int> a(L), b(L);
    for (int ia = 0; ia < dim; ++ia) {
        int tmp = ia;
        for (int j = L - 1; j >= 0; --j) {
            a[j] = tmp % n;
            tmp /= n;
        }
        for (int ib = 0; ib < dim; ++ib) {
            int t2 = ib;
            for (int j = L - 1; j >= 0; --j) {
                b[j] = t2 % n;
                t2 /= n;
            }
            cplx w = 1.0;
            for (int j = 0; j < L; ++j)
                w *= wt.w(b[j] - a[j]) * wt.wbar(a[(j + L - 1) % L] - b[j]);
            t(ib, ia) = w;
        }
    }
    return t;
}

CMat translation_matrix(int n, int L) {
    // the permutation T(s,s) degenerates to: b_j = a_{j-1}
    const int dim = int(std::pow(double(n), L));
    CMat p(dim, dim);
    std::vector<int> a(L);
    for (int ia = 0; ia < dim; ++ia) {
        int tmp = ia;
        for (int j = L - 1; j >= 0; --j) {
            a[j] = tmp % n;
            tmp /= n;
        }
        int ib = 0;
        for (int j = 0; j < L; ++j) ib = ib * n + a[(j + L - 1) % L];
        p(ib, ia) = 1.0;
    }
    return p;
}

double hamiltonian_limit_residual(const ModelParams& mp, double u0, double kprime, int L,
                                  double eps) {
    const CurvePoint s = make_point_from_chart(mp, u0);
    const CurvePoint r = make_point_from_chart(mp, u0 + eps);
    const CMat h = hamiltonian(mp, s.chart()->phi, s.chart()->phibar, kprime, L, 0);
    const int dim = h.rows();
    CMat fd = CMat::identity(dim) - translation_matrix(mp.n, L).dagger() * transfer_matrix(r, s, L);
    fd *= cplx(2.0 * kprime / eps);
    // the identity component of the expansion carries the elementary-cell
    // free energy; compare the traceless parts
    cplx trf = 0, trh = 0;
    for (int i = 0; i < dim; ++i) {
        trf += fd(i, i);
        trh += h(i, i);
    }
    const CMat fd0 = fd - (trf / double(dim)) * CMat::identity(dim);
    const CMat h0 = h - (trh / double(dim)) * CMat::identity(dim);
    return (fd0 - h0).fro_norm() / h0.fro_norm();
}

CMat hamiltonian(const ModelParams& mp, cplx phi_s, cplx phibar_s, double kprime, int L, int twist) {
    const int n = mp.n;
    if (L < 2) throw DomainError("hamiltonian: need L >= 2");
    double dim_ld = std::pow(double(n), L);
    if (dim_ld > 4096.0) throw DomainError("hamiltonian: dense cap exceeded");
    const int dim = int(dim_ld);

    std::vector<cplx> alpha(n), alphabar(n);
    for (int m = 1; m < n; ++m) {
        const double sn = std::sin(pi * m / n);
        alpha[m] = std::exp(iu * (double(2 * m - n) * phi_s / double(n))) / sn;
        alphabar[m] = kprime * std::exp(iu * (double(2 * m - n) * phibar_s / double(n))) / sn;
    }
    const cplx pref = 1.0 / (double(n) * std::cos(phibar_s));

    CMat h(dim, dim);
    std::vector<int> a(L);
    for (int ia = 0; ia < dim; ++ia) {
        int tmp = ia;
        for (int j = L - 1; j >= 0; --j) {
            a[j] = tmp % n;
            tmp /= n;
        }
        // diagonal coupling (X_j X_{j+1}^dag)^m, twisted closure at j = L-1
        cplx diag = 0;
        for (int j = 0; j < L; ++j) {
            const int jn = (j + 1) % L;
            for (int m = 1; m < n; ++m) {
                int d = a[j] - a[jn];
                if (j == L - 1) d -= twist;  // X_{L+1} = w^twist X_1
                diag += alpha[m] * std::pow(mp.omega, double(mod(m * d, n)));
            }
        }
        h(ia, ia) += pref * diag;
        // transverse term Z_j^m lowers a_j by m
        for (int j = 0; j < L; ++j) {
            for (int m = 1; m < n; ++m) {
                int ib = 0;
                for (int jj = 0; jj < L; ++jj) ib = ib * n + (jj == j ? mod(a[jj] - m, n) : a[jj]);
                h(ib, ia) += pref * alphabar[m];
            }
        }
    }
    return h;
}

std::vector<double> charge_sector_spectrum(const CMat& h, int n, int L, int m) {
    const int dim = h.rows();
    // orbits of the global shift a_j -> a_j + 1; every orbit has length n
    std::vector<int> shifted(dim);
    std::vector<int> digits(L);
    for (int ia = 0; ia < dim; ++ia) {
        int tmp = ia;
        for (int j = L - 1; j >= 0; --j) {
            digits[j] = tmp % n;
            tmp /= n;
        }
        int ib = 0;
        for (int j = 0; j < L; ++j) ib = ib * n + mod(digits[j] + 1, n);
        shifted[ia] = ib;
    }
    std::vector<int> reps;
    std::vector<char> seen(dim, 0);
    for (int ia = 0; ia < dim; ++ia) {
        if (seen[ia]) continue;
        reps.push_back(ia);
        int c = ia;
        for (int t = 0; t < n; ++t) {
            seen[c] = 1;
            c = shifted[c];
        }
    }
    // sector basis |m; rep> = n^{-1/2} sum_t w^{-mt} |rep + t(1,..,1)>;
    // R = prod_j Z_j acts on it with eigenvalue w^{-m}
    const int sdim = int(reps.size());
    const cplx w = std::exp(2.0 * pi * iu / double(n));
    CMat v(dim, sdim);
    for (int c = 0; c < sdim; ++c) {
        int state = reps[c];
        for (int t = 0; t < n; ++t) {
            v(state, c) += std::pow(w, double(-m * t)) / std::sqrt(double(n));
            state = shifted[state];
        }
    }
    CMat hm = v.dagger() * h * v;
    return hermitian_eigenvalues(hm);
}

KWReport check_kw_duality(const ModelParams& mp, double phi, double phibar, double kprime, int L) {
    const int n = mp.n;
    KWReport rep;
    rep.scale_factor = kprime * std::cos(phi) / std::cos(phibar);
    double scale = 1e-30;
    for (int mbar = 0; mbar < n; ++mbar) {
        const CMat h1 = hamiltonian(mp, phi, phibar, kprime, L, mbar);
        for (int m = 0; m < n; ++m) {
            const CMat h2 = hamiltonian(mp, phibar, phi, 1.0 / kprime, L, m);
            const auto s1 = charge_sector_spectrum(h1, n, L, m);
            const auto s2 = charge_sector_spectrum(h2, n, L, mbar);
            for (size_t k = 0; k < s1.size(); ++k) {
                rep.max_dev = std::max(rep.max_dev, std::abs(s1[k] - rep.scale_factor * s2[k]));
                scale = std::max(scale, std::abs(s1[k]));
            }
        }
    }
    rep.max_dev /= scale;
    return rep;
}

}  // namespace cpv
