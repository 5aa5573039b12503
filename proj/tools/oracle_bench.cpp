// Times the serial reference paths against the OpenMP kernels: theorem
// certification (relation enumeration) and whole-instance validation
// (per-constraint parallelism).

#include "emdm/analysis.hpp"
#include "emdm/bitrel.hpp"
#include "emdm/validator.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace emdm;

namespace {

double time_certification(oracle::ExecMode mode, int max_carrier) {
    auto start = std::chrono::steady_clock::now();
    uint64_t checked = 0;
    for (const auto &cert : certify_all(TheoremBase::builtin(), max_carrier, mode)) {
        if (!cert.certified) {
            std::fprintf(stderr, "certification failed: %s\n", cert.theorem.c_str());
            std::exit(1);
        }
        checked += cert.models_checked;
    }
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    std::printf("  models checked: %llu, %.3f s\n",
                static_cast<unsigned long long>(checked), dt.count());
    return dt.count();
}

// a catalog with many dyadic constraints over one big random relation
void validation_workload(Catalog &c, InstanceDB &db, int rows) {
    c.add_set({"S", SetKind::Entity, {}, {}, {}});
    c.add_set({"D", SetKind::Relationship, {{"a", "S"}, {"b", "S"}}, {}, {}});
    const char *tags[] = {"sym", "trans", "eucl", "irrefl", "acyclic",
                          "intrans", "ineucl", "asym", "conn", "equiv"};
    int n = 0;
    for (const char *tag : tags) {
        ConstraintDef k;
        k.name = "c" + std::to_string(++n);
        k.ctype = ctypes_by_abbrev(tag)[0];
        k.operands.sets = {"D"};
        c.add_constraint(k);
    }
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> node(1, rows / 4 + 1);
    for (int i = 1; i <= rows / 4 + 1; ++i) db.sets["S"].rows.push_back({i, {}});
    for (int i = 1; i <= rows; ++i)
        db.sets["D"].rows.push_back(
            {i, {{"a", Value::ref(node(rng))}, {"b", Value::ref(node(rng))}}});
}

double time_validation(const Catalog &c, const InstanceDB &db, ExecMode mode) {
    auto start = std::chrono::steady_clock::now();
    ValidationReport rep = validate_instance(c, db, mode);
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    std::printf("  violations: %zu, %.3f s\n", rep.violations.size(), dt.count());
    return dt.count();
}

} // namespace

int main(int argc, char **argv) {
    int max_carrier = argc > 1 ? std::atoi(argv[1]) : 4;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel falls back to serial\n");
#endif

    std::printf("\ntheorem certification, carriers 1..%d\n", max_carrier);
    double s_cert = 1e99, p_cert = 1e99;
    for (int i = 0; i < reps; ++i) {
        std::printf("serial:\n");
        s_cert = std::min(s_cert, time_certification(oracle::ExecMode::Serial, max_carrier));
        std::printf("parallel:\n");
        p_cert = std::min(p_cert, time_certification(oracle::ExecMode::Parallel, max_carrier));
    }
    std::printf("best serial %.3f s, best parallel %.3f s, speedup %.2fx\n", s_cert, p_cert,
                s_cert / p_cert);

    std::printf("\ninstance validation, 10 dyadic constraints over 3000 pairs\n");
    Catalog c("bench");
    InstanceDB db;
    validation_workload(c, db, 3000);
    double s_val = 1e99, p_val = 1e99;
    for (int i = 0; i < reps; ++i) {
        std::printf("serial:\n");
        s_val = std::min(s_val, time_validation(c, db, ExecMode::Serial));
        std::printf("parallel:\n");
        p_val = std::min(p_val, time_validation(c, db, ExecMode::Parallel));
    }
    std::printf("best serial %.3f s, best parallel %.3f s, speedup %.2fx\n", s_val, p_val,
                s_val / p_val);
    return 0;
}
