//! Value parsers for command-line flags and input files.

use std::fs;
use std::path::Path;

use qzeta::qcore::DirichletCharacter;
use qzeta::reference::KnownZeros;
use qzeta::zeros::QSchedule;
use qzeta::{Complex64, DirichletCharacter64};

fn floats(text: &str, want: usize, what: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != want {
        return Err(format!("{what} needs {want} comma-separated numbers, got `{text}`"));
    }
    parts.iter().map(|p| p.parse::<f64>().map_err(|e| format!("`{p}` in {what}: {e}"))).collect()
}

/// `RE,IM`, or a bare real number.
pub fn complex(text: &str) -> Result<Complex64, String> {
    if !text.contains(',') {
        return text.trim().parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|e| format!("`{text}`: {e}"));
    }
    let v = floats(text, 2, "complex number")?;
    Ok(Complex64::new(v[0], v[1]))
}

/// Shortest text that parses back to the same `f64`, in exponent form for very
/// small or large magnitudes.
pub fn display_float(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

pub fn display_complex(z: Complex64) -> String {
    format!("{},{}", display_float(z.re), display_float(z.im))
}

/// `RE1,IM1,RE2,IM2`; the corners must span a non-empty rectangle.
pub fn rect(text: &str) -> Result<(Complex64, Complex64), String> {
    let v = floats(text, 4, "rectangle")?;
    if v.iter().any(|x| !x.is_finite()) || v[0] == v[2] || v[1] == v[3] {
        return Err(format!("rectangle `{text}` is degenerate"));
    }
    Ok((Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3])))
}

/// `NX,NY`, each at least 2.
pub fn grid(text: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [nx, ny] = parts[..] else {
        return Err(format!("grid needs NX,NY, got `{text}`"));
    };
    let n = |p: &str| p.parse::<usize>().map_err(|e| format!("`{p}` in grid: {e}"));
    let (nx, ny) = (n(nx)?, n(ny)?);
    if nx < 2 || ny < 2 {
        return Err("grid needs at least 2 nodes per side".into());
    }
    Ok((nx, ny))
}

/// Comma-separated real numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

pub fn float_list(text: &str) -> Result<FloatList, String> {
    text.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()
        .map(FloatList)
}

/// A character given as `principal:N` or as a file path, kept with its source text.
#[derive(Debug, Clone)]
pub struct CharArg {
    pub source: String,
    pub chi: DirichletCharacter64,
}

impl CharArg {
    pub fn trivial() -> Self {
        Self { source: "principal:1".into(), chi: DirichletCharacter::principal(1) }
    }
}

pub fn character(text: &str) -> Result<CharArg, String> {
    let chi = match text.strip_prefix("principal:") {
        Some(n) => {
            let n: u32 = n.parse().map_err(|e| format!("modulus `{n}`: {e}"))?;
            if n == 0 {
                return Err("modulus must be positive".into());
            }
            DirichletCharacter::principal(n)
        }
        None => {
            let body = fs::read_to_string(text).map_err(|e| format!("character file `{text}`: {e}"))?;
            character_table(&body)?
        }
    };
    Ok(CharArg { source: text.to_string(), chi })
}

/// Line 1 is the modulus; each further line is `k, re, im`. Omitted `k` take the value 0.
pub fn character_table(body: &str) -> Result<DirichletCharacter64, String> {
    let mut lines = body.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let modulus: u32 = lines.next().ok_or("empty character file")?.parse().map_err(|e| format!("modulus: {e}"))?;
    if modulus == 0 {
        return Err("modulus must be positive".into());
    }
    let mut values = vec![Complex64::new(0.0, 0.0); modulus as usize];
    for line in lines {
        let parts: Vec<&str> = line.split([',', ' ', '\t']).filter(|p| !p.is_empty()).collect();
        let [k, re, im] = parts[..] else {
            return Err(format!("expected `k, re, im`, got `{line}`"));
        };
        let k: usize = k.parse().map_err(|e| format!("`{k}`: {e}"))?;
        if k == 0 || k > modulus as usize {
            return Err(format!("index {k} outside 1..={modulus}"));
        }
        let num = |p: &str| p.parse::<f64>().map_err(|e| format!("`{p}`: {e}"));
        values[k - 1] = Complex64::new(num(re)?, num(im)?);
    }
    DirichletCharacter::new(modulus, values).map_err(|e| e.to_string())
}

/// Trajectory origin: `trivial:J`, `rho:J` or `RE,IM`.
#[derive(Debug, Clone)]
pub struct OriginArg {
    pub source: String,
    pub s: Complex64,
}

pub fn origin(text: &str) -> Result<OriginArg, String> {
    let index = |j: &str| j.parse::<u32>().map_err(|e| format!("zero index `{j}`: {e}"));
    let s = if let Some(j) = text.strip_prefix("trivial:") {
        let j = index(j)?;
        if j == 0 {
            return Err("trivial zeros are numbered from 1".into());
        }
        KnownZeros::trivial(j)
    } else if let Some(j) = text.strip_prefix("rho:") {
        let j = index(j)? as usize;
        KnownZeros::nontrivial(j).ok_or_else(|| {
            format!("rho:{j} not tabulated; pass RE,IM (known: 1..={})", KnownZeros::nontrivial_count())
        })?
    } else {
        complex(text)?
    };
    Ok(OriginArg { source: text.to_string(), s })
}

/// `standard` or a file with one `q` per line, strictly decreasing.
#[derive(Debug, Clone)]
pub struct ScheduleArg {
    pub source: String,
    pub schedule: QSchedule<f64>,
}

pub fn schedule(text: &str) -> Result<ScheduleArg, String> {
    let schedule = if text == "standard" || text == "paper" {
        QSchedule::standard()
    } else {
        let body = fs::read_to_string(Path::new(text)).map_err(|e| format!("schedule file `{text}`: {e}"))?;
        let points = body
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.parse::<f64>().map_err(|e| format!("`{l}`: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        QSchedule::new(points).map_err(|e| e.to_string())?
    };
    Ok(ScheduleArg { source: text.to_string(), schedule })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(complex("-0.5,2").unwrap(), Complex64::new(-0.5, 2.0));
        assert_eq!(complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert!(complex("1,2,3").is_err());
        assert!(complex("a,1").is_err());
    }

    #[test]
    fn rect_and_grid() {
        assert!(rect("0,0,1,1").is_ok());
        assert!(rect("0,0,0,1").is_err());
        assert!(rect("0,0,1").is_err());
        assert_eq!(grid("3,4").unwrap(), (3, 4));
        assert!(grid("1,4").is_err());
    }

    #[test]
    fn character_tables() {
        let chi = character_table("4\n1, 1, 0\n3, -1, 0\n").unwrap();
        assert_eq!(chi.modulus(), 4);
        assert!(!chi.is_principal());
        assert!(character_table("4\n1, 1, 0\n3, 1, 0\n2, 1, 0\n").is_err());
        assert!(character_table("4\n5, 1, 0\n").is_err());
        assert_eq!(character("principal:3").unwrap().chi.modulus(), 3);
    }

    #[test]
    fn origins() {
        assert_eq!(origin("trivial:2").unwrap().s, Complex64::new(-4.0, 0.0));
        assert!((origin("rho:1").unwrap().s.im - 14.13472).abs() < 1e-12);
        assert!(origin("rho:9").is_err());
        assert!(origin("trivial:0").is_err());
    }

    #[test]
    fn display_round_trips() {
        let z = Complex64::new(0.1 + 0.2, -1e-300);
        assert_eq!(complex(&display_complex(z)).unwrap(), z);
        assert_eq!(display_float(1e-13), "1e-13");
        assert_eq!(display_float(0.5), "0.5");
    }
}
