// Histogram data of the one-step chain for several contraction ratios.
// Writes hist_<lambda>.csv into the given directory (default: current).
//
// $ cargo run --release --example figure_histogram -- out/

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use gapcert::bernoulli::{histogram, write_histogram_csv, HistogramConfig};

fn main() -> gapcert::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir)?;
    let cfg = HistogramConfig::default();
    for lambda in [0.5, 0.618, std::f64::consts::E / 4.0, 2.0 / 3.0] {
        let bins = histogram(lambda, &cfg)?;
        let path = dir.join(format!("hist_{lambda:.4}.csv"));
        write_histogram_csv(BufWriter::new(File::create(&path)?), &bins)?;
        let peak = bins.iter().map(|b| b.mass).fold(0.0, f64::max);
        println!("{} ({} bins, peak mass {peak:.5})", path.display(), bins.len());
    }
    Ok(())
}
