// Replica simulation of the hypercube walk next to the certified bound.
//
// $ cargo run --release --example hypercube_tails -- 4 1000 10000

use gapcert::certificate::HypercubeNorm;
use gapcert::cli::grid_inside;
use gapcert::hypercube::{build_observable, deviation_curve, seminorms, ObservableKind, SimConfig, Start};
use gapcert::output::write_deviation_csv;

fn main() -> gapcert::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let n_slots = args.next().unwrap_or(4) as u32;
    let n = args.next().unwrap_or(1000);
    let replicas = args.next().unwrap_or(10_000);

    let f = build_observable(&ObservableKind::Rho, n_slots)?;
    let norm = HypercubeNorm::DL;
    let spec = seminorms(&f).observable_spec(norm)?;
    let delta0 = gapcert::certificate::hypercube_gap(n_slots, norm)?.delta0;
    let grid = grid_inside(spec.norm * delta0 / 3.0, 10, false);
    let cfg = SimConfig { n, replicas, seed: 2024, threads: 0 };

    let (cert, points) = deviation_curve(&f, norm, Start::Uniform, &grid, &cfg)?;
    eprintln!("N={n_slots} delta0={:.6} |rho|={} n={n} replicas={replicas}", cert.delta0, spec.norm);
    write_deviation_csv(std::io::stdout().lock(), &points)?;
    Ok(())
}
