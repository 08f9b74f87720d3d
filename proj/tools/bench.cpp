// Benchmark comparing the serial reference kernels with the OpenMP paths:
// per-element ellipticity scans, the equivariant-basis projector and the
// fraction-free elimination.

#include "ghecke/homology.hpp"

#include <chrono>
#include <iostream>

using namespace ghecke;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double timed(F&& f) {
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const std::string& name, double serial, double parallel) {
    std::cout << name << ": serial " << serial << "s, parallel " << parallel << "s, speedup "
              << (parallel > 0 ? serial / parallel : 0.0) << "x\n";
}

// det(1 - w theta) over every element, the per-element scan behind the
// elliptic counts
std::vector<int> ellipticity_scan(const WeylContext& ctx, Exec ex) {
    const WeylGroupTable& wt = ctx.table;
    std::vector<int> elliptic(wt.order, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 256) if (ex == Exec::parallel)
#endif
    for (int32_t w = 0; w < wt.order; ++w)
        elliptic[w] = sgn(det_ellipticity(wt, w, true, &ctx.theta)) != 0 ? 1 : 0;
    (void)ex;
    return elliptic;
}

}  // namespace

int main() {
    std::cout << "-- ellipticity scan over W(E6), 51840 elements --\n";
    {
        WeylContext ctx = make_context('E', 6);
        std::vector<int> a, b;
        double ts = timed([&] { a = ellipticity_scan(ctx, Exec::serial); });
        double tp = timed([&] { b = ellipticity_scan(ctx, Exec::parallel); });
        if (a != b) {
            std::cerr << "mismatch between serial and parallel scans\n";
            return 1;
        }
        long total = 0;
        for (int x : a) total += x;
        std::cout << "   elliptic elements: " << total << "\n";
        report("scan", ts, tp);
    }

    std::cout << "-- equivariant hom basis, A3 principal series, degree 1 --\n";
    {
        WeylContext ctx = make_context('A', 3);
        HModule ps = principal_series(ctx, {Rat(0), Rat(0), Rat(0)});
        ClassDomain scope = parabolic_domain(ctx, {0, 1, 2}, false);
        HomBasis hs, hp;
        double ts = timed([&] { hs = hom_w_basis(scope, ps, ps, 1, Exec::serial); });
        double tp = timed([&] { hp = hom_w_basis(scope, ps, ps, 1, Exec::parallel); });
        if (hs.dim() != hp.dim()) {
            std::cerr << "basis dimension mismatch\n";
            return 1;
        }
        std::cout << "   basis dimension: " << hs.dim() << "\n";
        report("hom-basis", ts, tp);
    }

    std::cout << "-- reference nullspace route, A3 principal series, degree 0 --\n";
    {
        WeylContext ctx = make_context('A', 3);
        HModule ps = principal_series(ctx, {Rat(0), Rat(0), Rat(0)});
        ClassDomain scope = parabolic_domain(ctx, {0, 1, 2}, false);
        HomBasis ns, np, pr;
        double ts = timed([&] { ns = hom_w_basis_nullspace(scope, ps, ps, 0, Exec::serial); });
        double tp = timed([&] { np = hom_w_basis_nullspace(scope, ps, ps, 0, Exec::parallel); });
        double tproj = timed([&] { pr = hom_w_basis(scope, ps, ps, 0, Exec::parallel); });
        if (ns.dim() != np.dim() || ns.dim() != pr.dim()) {
            std::cerr << "dimension mismatch between routes\n";
            return 1;
        }
        std::cout << "   dimension: " << ns.dim() << " (projector kernel: " << tproj << "s)\n";
        report("nullspace", ts, tp);
    }
    return 0;
}
