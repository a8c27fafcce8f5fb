use std::time::Instant;
use widecolor::chromatic::{chromatic_number, ChromaticResult};
use widecolor::wide::build_w;

#[test]
fn measure_chi_w25() {
    let g = build_w(2, 5).unwrap();
    let t0 = Instant::now();
    let r = chromatic_number(&g, 64_000_000).unwrap();
    let dt = t0.elapsed().as_secs_f64();
    match r {
        ChromaticResult::Exact { chi, witness } => {
            println!("chi(W(2,5)) = {chi} in {dt:.1}s");
            assert_eq!(chi, 5);
            assert!(witness.is_proper(&g));
        }
        ChromaticResult::Bounded { lb, ub } => panic!("undecided [{lb},{ub}] after {dt:.1}s"),
    }
}
