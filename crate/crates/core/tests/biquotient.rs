use ratholo::biquotient::{self, Convention};

#[test]
fn conventions_differ_when_both_sides_act() {
    let (l, r) = ([1, 0, -1], [0, 1, -1]);
    assert_eq!(biquotient::su3_circle_dx(l, r, Convention::PaperSu3), -1);
    assert_eq!(biquotient::su3_circle_dx(l, r, Convention::PullbackDifference), 0);
}

#[test]
fn pullback_difference_matches_torsion_order() {
    let checks = biquotient::eschenburg_convention_check(3);
    let pd = checks.iter().find(|c| c.convention == "pullback_difference").unwrap();
    let ps = checks.iter().find(|c| c.convention == "paper_su3").unwrap();
    assert_eq!(pd.cases, 7usize.pow(4));
    assert_eq!(pd.matches, pd.cases);
    assert!(ps.matches < ps.cases);
}

#[test]
fn trivial_circle_locus() {
    let (n, bad) = biquotient::locus_scan(4);
    assert_eq!(n, 9usize.pow(4));
    assert!(bad.is_empty(), "{bad:?}");
    let r = biquotient::circle_triviality_locus(2, -1, 2, -1);
    assert!(r.on_locus && r.dx_coefficient == 0);
    assert!(!biquotient::circle_triviality_locus(1, 0, 0, 1).on_locus);
}
