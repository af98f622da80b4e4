// Evaluate the tail bounds and size a chain for a target error bar.
//
// $ cargo run --example bounds_and_planning

use gapcert::bounds::{
    bv_corollary_bound, doeblin_corollary_bound, min_n_theorem_a, plan_required_n, theorem_a_bound,
    theorem_b_bound, theorem_b_window, ObservableSpec,
};
use gapcert::{Family, GapCertificate};

fn main() -> gapcert::Result<()> {
    let cert = GapCertificate::from_delta0(0.5)?;
    let obs = ObservableSpec::from_norm(Family::Custom, 1.0)?;
    let min_n = min_n_theorem_a(&cert)?;
    println!("delta0=0.5: n >= {} (simplified {})", min_n.exact_n, min_n.simplified_n);

    for a in [0.0, 0.1, 0.2, 0.5] {
        let b = theorem_a_bound(&cert, &obs, 200, a)?;
        println!("A  n=200 a={a:<4} raw={:.6} clipped={:.6} regime={}", b.raw, b.clipped, b.regime.as_str());
    }

    let window = theorem_b_window(cert.delta0, obs.norm, 1.0);
    let b = theorem_b_bound(&cert, &obs, 1.0, 2000, window / 2.0)?;
    println!("B  U=1 window={window:.6} a={:.6} raw={:.6}", window / 2.0, b.raw);

    let b = doeblin_corollary_bound(0.75, 10_000, 0.2)?;
    println!("doeblin beta=0.75 n=1e4 a=0.2 raw={:.6e}", b.raw);

    let b = bv_corollary_bound(2, 2.0, 100_000, 0.05)?;
    println!("bv ell=2 |f|=2 n=1e5 a=0.05 raw={:.6e}", b.raw);

    // A precondition failure is reported, not hidden.
    let b = doeblin_corollary_bound(0.5, 10, 0.1)?;
    println!("doeblin n=10: valid={} flags={:?}", b.valid, b.codes());

    for p in [0.1, 0.05, 0.01, 1e-6] {
        let n = plan_required_n(&cert, &obs, 0.1, p)?;
        println!("plan a=0.1 p={p:<6} -> n={n}");
    }
    Ok(())
}
