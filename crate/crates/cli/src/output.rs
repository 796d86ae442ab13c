use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Reals are printed with 17 significant digits so CSV output parses back
/// to the same `f64`.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn optional(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

pub fn open(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip() {
        for x in [0.1, 1.0 / 3.0, 12.900_365_535_347_823, 5e-324, 1e300, -2.5] {
            assert_eq!(real(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(real(0.5), "5.0000000000000000e-1");
        assert_eq!(optional(None), "");
    }
}
