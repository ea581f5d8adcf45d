mod common;

use common::{build, pure_spec, sample, DenseOracle};
use ratholo::SullivanAlgebra;

#[test]
fn random_models_agree_with_dense_oracle() {
    let specs = sample(pure_spec(), 60);
    for (i, s) in specs.iter().enumerate() {
        let m = build(s);
        let ours = m.cohomology_dims(14).dims;
        let oracle = DenseOracle::new(&m).betti(14);
        assert_eq!(ours, oracle, "model {i}: {}", m.to_json());
    }
}

#[test]
fn oracle_on_known_spaces() {
    let cp2 = SullivanAlgebra::from_strings(&[("u", 2), ("x", 5)], &[("x", "u^3")]).unwrap();
    assert_eq!(DenseOracle::new(&cp2).betti(6), vec![1, 0, 1, 0, 1, 0, 0]);
    // S3 x S3 x S2: products of odd generators
    let m = SullivanAlgebra::from_strings(&[("u", 2), ("x", 3), ("y", 3), ("z", 3)], &[("x", "u^2")]).unwrap();
    assert_eq!(DenseOracle::new(&m).betti(8), m.cohomology_dims(8).dims);
    assert_eq!(m.cohomology_dims(8).dims, vec![1, 0, 1, 2, 0, 2, 1, 0, 1]);
}

#[test]
fn sample_is_varied() {
    let specs = sample(pure_spec(), 60);
    let sizes: std::collections::BTreeSet<usize> = specs.iter().map(|s| s.even.len() + s.odd.len()).collect();
    assert!(sizes.len() >= 3, "{sizes:?}");
}
