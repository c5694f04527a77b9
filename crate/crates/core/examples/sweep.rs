//! A small size table comparing the spanner and the emulator, as CSV.

use ftem::harness::{run_sweep, sweep_csv, Algorithm, Budget, SweepSpec};
use ftem::CheckMode;

fn main() -> ftem::Result<()> {
    let spec = SweepSpec {
        generator: "gnm:n=60:m=240".into(),
        algorithms: vec![Algorithm::Spanner, Algorithm::Emk],
        fs: vec![1, 2, 4],
        ks: vec![3],
        seeds: vec![1, 2],
        mode: CheckMode::Approx,
        polylog_constant: 1.0,
        c_b: 1.0,
        verify: false,
        jobs: 4,
        budget: Budget::default(),
    };
    print!("{}", sweep_csv(&run_sweep(&spec)?)?);
    Ok(())
}
