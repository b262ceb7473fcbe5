/// Deterministic rounding of a point on the hyperplane `Σ z_j = 0` to an
/// integer point on the same hyperplane.
///
/// With `m = |Σ ⌊z_j⌋|`, the first `m` coordinates that have a nonzero
/// fractional part are rounded up and every other coordinate is rounded
/// down. Integral coordinates are skipped because rounding them up would not
/// change their value. Returns `None` if the rounded point misses the
/// hyperplane, which only happens when floating-point error has pushed `Σ z`
/// off zero; callers treat that as a rejection.
pub fn round_to_lattice(z: &[f64]) -> Option<Vec<i64>> {
    let floors: Vec<f64> = z.iter().map(|v| v.floor()).collect();
    let floor_sum: f64 = floors.iter().sum();
    if floor_sum > 0.0 {
        return None;
    }
    let mut m = (-floor_sum) as usize;
    let mut x: Vec<i64> = floors.iter().map(|&f| f as i64).collect();
    for (xj, (&zj, &fj)) in x.iter_mut().zip(z.iter().zip(&floors)) {
        if m == 0 {
            break;
        }
        if zj > fj {
            *xj += 1;
            m -= 1;
        }
    }
    (x.iter().sum::<i64>() == 0).then_some(x)
}
