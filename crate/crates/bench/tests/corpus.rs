use steiner_ecc::harness::BenchAlgo;
use steiner_ecc_bench::{trees, ORACLE_SIZES};

#[test]
fn corpus_is_stable_and_algorithms_agree() {
    let a = trees(&[50, 60]);
    assert_eq!(a, trees(&[50, 60]));
    assert_eq!(
        a.iter().map(|(n, t)| (*n, t.n())).collect::<Vec<_>>(),
        vec![(50, 50), (60, 60)]
    );
    let (_, t) = &trees(&ORACLE_SIZES[..1])[0];
    let sums: Vec<u64> = [
        BenchAlgo::Fast,
        BenchAlgo::FastPar,
        BenchAlgo::Oracle,
        BenchAlgo::OraclePairwise,
    ]
    .iter()
    .map(|a| a.run(t))
    .collect();
    assert!(sums.windows(2).all(|w| w[0] == w[1]), "{sums:?}");
}
