//! Character and rational arguments.

use p2walls_core::exactmath::parse_rat;
use p2walls_core::{ChernChar, Int, Rat};

use crate::error::{CliError, CliResult};

/// Parses `r,c1,ch2` or `r:μ:Δ`; surrounding parentheses and spaces are ignored.
pub fn parse_character(text: &str) -> CliResult<ChernChar> {
    let cleaned: String = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    let (sep, invariant_form) = if cleaned.contains(':') {
        (':', true)
    } else {
        (',', false)
    };
    let parts: Vec<&str> = cleaned.split(sep).collect();
    if parts.len() != 3 {
        return Err(CliError::parse(text, "expected three fields, `r,c1,ch2` or `r:mu:disc`"));
    }
    let rank: Int = parts[0]
        .parse()
        .map_err(|_| CliError::parse(text, format!("rank {:?} is not an integer", parts[0])))?;
    let second = parse_rational(parts[1]).map_err(|_| CliError::parse(text, format!("bad field {:?}", parts[1])))?;
    let third = parse_rational(parts[2]).map_err(|_| CliError::parse(text, format!("bad field {:?}", parts[2])))?;
    if invariant_form {
        Ok(ChernChar::from_invariants(rank, second, third)?)
    } else {
        if !second.is_integer() {
            return Err(CliError::parse(text, "c1 must be an integer"));
        }
        Ok(ChernChar::new(rank, second.to_integer(), third)?)
    }
}

/// Parses an integer, `p/q` or a finite decimal such as `0.25`.
pub fn parse_rational(text: &str) -> CliResult<Rat> {
    let text = text.trim();
    if let Some(x) = parse_rat(text) {
        return Ok(x);
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches('-'), frac);
        if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
            let numer: Int = digits.parse().expect("digits");
            let denom = Int::from(10u32).pow(frac.len() as u32);
            let value = Rat::new(numer, denom);
            return Ok(if negative { -value } else { value });
        }
    }
    Err(CliError::parse(text, "not a rational number"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use p2walls_core::exactmath::{int, rat};
    use p2walls_core::Error;

    #[test]
    fn both_forms() {
        assert_eq!(parse_character("6:1/3:13/18").unwrap(), ChernChar::new(6, 2, int(-4)).unwrap());
        assert_eq!(parse_character("1,0,0").unwrap(), ChernChar::structure_sheaf());
        assert_eq!(parse_character(" (1, -1, 1/2) ").unwrap(), ChernChar::new(1, -1, rat(1, 2)).unwrap());
    }

    #[test]
    fn rejects() {
        assert!(matches!(
            parse_character("3:1/2:0"),
            Err(CliError::Core(Error::NotIntegral(_)))
        ));
        assert!(matches!(parse_character("1,1/2,0"), Err(CliError::Parse { .. })));
        assert!(matches!(parse_character("1,2"), Err(CliError::Parse { .. })));
        assert!(matches!(parse_character("x,0,0"), Err(CliError::Parse { .. })));
        assert!(matches!(parse_character("0,0,0"), Err(CliError::Core(Error::ZeroCharacter))));
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7/8").unwrap(), rat(7, 8));
        assert!(parse_rational("1.2.3").is_err());
    }
}
