use num_complex::Complex64;
use raux_core::calibration::Calibration;
use raux_core::zeros::*;

#[test]
fn first_zeros_below_the_axis() {
    let cal = Calibration::default();
    let b = ZeroBox::new(0.0, 30.0, -10.0, 0.0);
    assert_eq!(count_zeros(&b, &cal).unwrap().count, 3);
    let found = census(&b, &cal).unwrap();
    let mut zs: Vec<Complex64> = found.iter().flat_map(|b| b.zeros.clone()).collect();
    zs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
    let want = [(10.648, -0.951), (16.430, -4.793), (21.072, -8.436)];
    for (z, (re, im)) in zs.iter().zip(want) {
        assert!((z.re - re).abs() < 1e-3 && (z.im - im).abs() < 1e-3, "{z}");
    }
}

#[test]
fn counts_add_over_a_split() {
    let cal = Calibration::default();
    let whole = count_zeros(&ZeroBox::new(0.0, 100.0, -100.0, 0.0), &cal).unwrap().count;
    let left = count_zeros(&ZeroBox::new(0.0, 50.0, -100.0, 0.0), &cal).unwrap().count;
    let right = count_zeros(&ZeroBox::new(50.0, 100.0, -100.0, 0.0), &cal).unwrap().count;
    assert_eq!(whole, left + right);
    assert!(whole > 0);
}

#[test]
fn trivial_zeros_and_empty_regions() {
    let cal = Calibration::default();
    assert_eq!(count_zeros(&ZeroBox::new(-21.0, -19.0, -1.0, 1.0), &cal).unwrap().count, 1);
    assert_eq!(count_zeros(&ZeroBox::new(2.0, 100.0, 10.0, 100.0), &cal).unwrap().count, 0);
    let z = refine_zero(Complex64::new(-20.1, 0.05), &cal).unwrap();
    assert!((z - Complex64::new(-20.0, 0.0)).norm() < 1e-8);
}

#[test]
fn far_guess_is_rejected() {
    let cal = Calibration::default();
    assert!(refine_zero(Complex64::new(40.0, 50.0), &cal).is_err());
}
