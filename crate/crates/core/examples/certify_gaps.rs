// Gap certificates for every built-in family, plus a custom (C, theta) pair.
//
// $ cargo run --example certify_gaps

use gapcert::certificate::{bernoulli_certificate, doeblin_gap, hypercube_gap, lemma_gap, HypercubeNorm, LemmaInput};

fn main() -> gapcert::Result<()> {
    for beta in [0.1, 0.5, 1.0] {
        let c = doeblin_gap(beta)?;
        println!("doeblin  beta={beta:<5} delta0={:.6}", c.delta0);
    }
    for n in [2, 4, 10] {
        for norm in HypercubeNorm::ALL {
            let c = hypercube_gap(n, norm)?;
            println!("hypercube N={n:<3} {:<13} delta0={:.6}  (C={}, theta={:.4})", c.family.as_str(), c.delta0, c.c_const, c.theta);
        }
    }
    for lambda in [0.5, 0.618, std::f64::consts::E / 4.0, 0.9] {
        let (ell, c) = bernoulli_certificate(lambda)?;
        println!("bernoulli lambda={lambda:.4} ell={ell} delta0={:.6}", c.delta0);
    }
    let c = lemma_gap(LemmaInput::new(4.0, 0.75)?);
    println!("custom   C=4 theta=0.75 delta0={}", c.delta0);
    println!("{}", serde_json::to_string_pretty(&c).expect("serializable"));
    Ok(())
}
