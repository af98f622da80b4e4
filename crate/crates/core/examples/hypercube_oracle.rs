// Exact operator calculus on {0,1}^N: seminorms, one step of L0, and the
// dynamical variance of 1_{x_1 = 0}.
//
// $ cargo run --example hypercube_oracle -- 6

use gapcert::certificate::{hypercube_gap, HypercubeNorm};
use gapcert::hypercube::{apply_averaging, build_observable, dynamical_variance_exact, scrambled_variance, seminorms, ObservableKind};

fn main() -> gapcert::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);

    for (name, kind) in [
        ("rho", ObservableKind::Rho),
        ("first_slot_zero", ObservableKind::FirstSlotZero),
        ("parity", ObservableKind::Parity),
    ] {
        let f = build_observable(&kind, n)?;
        let before = seminorms(&f);
        let after = seminorms(&apply_averaging(&f));
        println!(
            "{name:<16} Lip {:.4} -> {:.4}   W {:.4} -> {:.4}   S {:.4} -> {:.4}",
            before.lip, after.lip, before.w, after.w, before.s, after.s
        );
        for norm in HypercubeNorm::ALL {
            println!("    {:?} norm {:.4}, certified gap {:.6}", norm, before.norm(norm), hypercube_gap(n, norm)?.delta0);
        }
    }

    let f = build_observable(&ObservableKind::FirstSlotZero, n)?;
    let sigma2 = dynamical_variance_exact(&f)?;
    println!("sigma^2(1_[0]) = {sigma2:.12}  closed form (2N-1)/4 = {}", (2.0 * n as f64 - 1.0) / 4.0);
    println!("scrambled_variance(1/2N) = {:.12}", scrambled_variance(0.5 / n as f64)?);
    Ok(())
}
