// Monte Carlo integral of a step function against the Bernoulli convolution,
// with its tail curve under the BV corollary.
//
// $ cargo run --release --example bernoulli_integral -- 0.618 20000

use gapcert::bernoulli::{estimate_integral, BernoulliSim, IfsParams, StepFunction};
use gapcert::bounds::bv_window;
use gapcert::cli::grid_inside;
use gapcert::output::write_deviation_csv;

fn main() -> gapcert::Result<()> {
    let mut args = std::env::args().skip(1);
    let lambda: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.618);
    let n: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);

    let params = IfsParams::new(lambda)?;
    let f = StepFunction::indicator_from(0.0);
    let sim = BernoulliSim { n, replicas: 1_000, seed: 1, start: 0.0, threads: 0 };
    let grid = grid_inside(bv_window(params.ell, 2.0), 10, true);
    // By symmetry the exact value is 1/2.
    let est = estimate_integral(&params, &f, &sim, Some(0.5), &grid)?;
    eprintln!("lambda={lambda} ell={} estimate={:.6} |f|_BV={}", params.ell, est.estimate, est.bv.norm);
    write_deviation_csv(std::io::stdout().lock(), &est.curve)?;
    Ok(())
}
