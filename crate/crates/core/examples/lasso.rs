//! Solve one generated LASSO instance with each solver and compare iteration counts.

use proxcg::problems::{gen_lasso, LassoSpec};
use proxcg::{solve, SolverConfig, Variant};

fn main() -> proxcg::Result<()> {
    let inst = gen_lasso(&LassoSpec::new(500, 150, 30, 0.1, 7))?;
    for variant in Variant::ALL {
        let mut cfg = SolverConfig::default().with_variant(variant);
        // The baselines grow their step each iteration, as in the benchmark suites.
        cfg.mu_increase = !variant.is_conjugate_gradient();
        let r = solve(&inst.problem, &inst.x0, &cfg)?;
        println!(
            "{:<13} {:<10} iterations {:>6}  switches {:>4}  f = {:.10}",
            variant.name(),
            r.status.name(),
            r.iterations,
            r.switches,
            r.f
        );
    }
    Ok(())
}
