/// Scientific notation with 17 significant digits; round-trips every `f64`.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}
