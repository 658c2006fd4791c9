//! Encoding size against circuit length and qubit count, as CSV.

use clifford_sat::cli::bench::{run_bench, write_csv, BenchConfig, Series};

fn main() {
    let mut rows = run_bench(&BenchConfig::new(
        Series::Scaling,
        vec![16],
        vec![1000, 2000, 4000, 8000],
    ))
    .unwrap();
    rows.extend(
        run_bench(&BenchConfig::new(
            Series::Scaling,
            vec![8, 16, 32, 64],
            vec![2000],
        ))
        .unwrap(),
    );
    rows.retain(|r| r.is_mean());
    write_csv(&rows, std::io::stdout()).unwrap();
}
