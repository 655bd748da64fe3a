use std::f64::consts::PI;

/// Taylor aperture taper with `nbar` nearly constant-level sidelobes at
/// `sidelobe_level_db` (a positive number of dB below the mainlobe, or
/// negative; only the magnitude is used). Normalized so the largest
/// coefficient is 1.
pub fn taylor_weights(count: usize, sidelobe_level_db: f64, nbar: usize) -> Vec<f64> {
    if count == 0 {
        return Vec::new();
    }
    if count == 1 || nbar < 2 {
        return vec![1.0; count];
    }
    let b = 10f64.powf(sidelobe_level_db.abs() / 20.0);
    let a = b.acosh() / PI;
    let nb = nbar as f64;
    let sigma2 = nb * nb / (a * a + (nb - 0.5).powi(2));

    let ms: Vec<f64> = (1..nbar).map(|m| m as f64).collect();
    let coefficients: Vec<f64> = ms
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let numer: f64 = ms.iter().map(|&p| 1.0 - m * m / sigma2 / (a * a + (p - 0.5).powi(2))).product();
            let denom: f64 =
                2.0 * ms.iter().filter(|&&p| p != m).map(|&p| 1.0 - m * m / (p * p)).product::<f64>();
            sign * numer / denom
        })
        .collect();

    let n = count as f64;
    let raw: Vec<f64> = (0..count)
        .map(|k| {
            let x = (k as f64 - n / 2.0 + 0.5) / n;
            1.0 + 2.0 * ms.iter().zip(&coefficients).map(|(&m, &f)| f * (2.0 * PI * m * x).cos()).sum::<f64>()
        })
        .collect();
    let peak = raw.iter().cloned().fold(f64::MIN, f64::max);
    raw.into_iter().map(|w| w / peak).collect()
}
