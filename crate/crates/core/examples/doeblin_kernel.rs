// Minorization, Dobrushin coefficient and stationary law of a finite kernel,
// then an empirical tail curve under the Doeblin corollary.
//
// $ cargo run --release --example doeblin_kernel [kernel.json]

use gapcert::certificate::doeblin_gap;
use gapcert::cli::grid_inside;
use gapcert::doeblin::{deviation_curve, dobrushin_coefficient, minorization_split, stationary_distribution, DoeblinSim, FiniteKernel};
use gapcert::output::write_deviation_csv;

fn main() -> gapcert::Result<()> {
    let kernel = match std::env::args().nth(1) {
        Some(path) => FiniteKernel::from_json_str(&std::fs::read_to_string(path)?)?,
        None => FiniteKernel::new(vec![vec![0.5, 0.5], vec![0.25, 0.75]])?,
    };
    let split = minorization_split(&kernel)?;
    let pi = stationary_distribution(&kernel)?;
    println!("beta      = {}", split.beta);
    println!("omega     = {:?}", split.omega);
    println!("dobrushin = {}", dobrushin_coefficient(&kernel));
    println!("pi        = {pi:?}");
    println!("delta0    = {}", doeblin_gap(split.beta)?.delta0);

    // Alternating observable with values in [-1, 1].
    let f: Vec<f64> = (0..kernel.size()).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let sim = DoeblinSim { n: 10_000, replicas: 2_000, seed: 7, start: 0, threads: 0 };
    let (_, points) = deviation_curve(&kernel, &f, &grid_inside(split.beta / 2.0, 10, false), &sim)?;
    write_deviation_csv(std::io::stdout().lock(), &points)?;
    Ok(())
}
