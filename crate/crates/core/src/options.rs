//! Textual names of the policy switches, shared by the command line and the C interface.
//!
//! Every policy type implements [`FromStr`] and [`Display`]; the two are inverse on the names
//! listed below. [`SolverConfig::set_option`] applies a `name = value` pair to a configuration.
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::clause_db::ReduceMode;
use crate::restart::RestartMode;
use crate::search::SolverConfig;
use crate::vivify::{Activation, Selection, SortOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OptionError {
    #[error("unknown option `{0}`")]
    UnknownOption(String),
    #[error("invalid value `{value}` for {what}; expected {expected}")]
    InvalidValue {
        what: &'static str,
        value: String,
        expected: &'static str,
    },
}

fn invalid(what: &'static str, value: &str, expected: &'static str) -> OptionError {
    OptionError::InvalidValue {
        what,
        value: value.to_string(),
        expected,
    }
}

/// Activation selected by the name `threshold`.
const DEFAULT_THRESHOLD: Activation = Activation::Threshold {
    alpha: 1000,
    beta: 2000,
};

impl FromStr for RestartMode {
    type Err = OptionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "glucose" => Ok(RestartMode::Glucose),
            "luby" => Ok(RestartMode::Luby),
            _ => Err(invalid("restart policy", s, "glucose or luby")),
        }
    }
}

impl fmt::Display for RestartMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RestartMode::Glucose => "glucose",
            RestartMode::Luby => "luby",
        })
    }
}

impl FromStr for ReduceMode {
    type Err = OptionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "glucose" => Ok(ReduceMode::Glucose),
            "tiered" => Ok(ReduceMode::Tiered),
            _ => Err(invalid("reduction policy", s, "glucose or tiered")),
        }
    }
}

impl fmt::Display for ReduceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReduceMode::Glucose => "glucose",
            ReduceMode::Tiered => "tiered",
        })
    }
}

const ACTIVATION_NAMES: &str = "reduce, threshold, every or gap<N> (e.g. gap500)";

impl FromStr for Activation {
    type Err = OptionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reduce" => Ok(Activation::FollowReduction),
            "threshold" => Ok(DEFAULT_THRESHOLD),
            "every" => Ok(Activation::EveryRestart),
            _ => s
                .strip_prefix("gap")
                .and_then(|n| n.parse().ok())
                .map(Activation::FixedGap)
                .ok_or_else(|| invalid("vivification activation", s, ACTIVATION_NAMES)),
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Activation::FollowReduction => f.write_str("reduce"),
            a if a == DEFAULT_THRESHOLD => f.write_str("threshold"),
            Activation::Threshold { alpha, beta } => write!(f, "threshold({alpha},{beta})"),
            Activation::EveryRestart => f.write_str("every"),
            Activation::FixedGap(n) => write!(f, "gap{n}"),
        }
    }
}

const SELECTION_NAMES: &str = "ghalf, gfrac=<fraction in (0, 1]>, maple, live+ or live++";

impl FromStr for Selection {
    type Err = OptionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ghalf" => Ok(Selection::GlucoseHalf),
            "maple" => Ok(Selection::MapleTiers),
            "live+" => Ok(Selection::LivePlus),
            "live++" => Ok(Selection::LivePlusPlus),
            _ => s
                .strip_prefix("gfrac=")
                .and_then(|d| d.parse::<f64>().ok())
                .filter(|d| *d > 0.0 && *d <= 1.0)
                .map(Selection::GlucoseFraction)
                .ok_or_else(|| invalid("vivification selection", s, SELECTION_NAMES)),
        }
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selection::GlucoseHalf => f.write_str("ghalf"),
            Selection::GlucoseFraction(d) => write!(f, "gfrac={d}"),
            Selection::MapleTiers => f.write_str("maple"),
            Selection::LivePlus => f.write_str("live+"),
            Selection::LivePlusPlus => f.write_str("live++"),
        }
    }
}

impl SortOrder {
    pub fn name(self) -> &'static str {
        match self {
            SortOrder::Current => "current",
            SortOrder::Low2HighLevel => "l2h-level",
            SortOrder::High2LowLevel => "h2l-level",
            SortOrder::Low2HighActivity => "l2h-act",
            SortOrder::High2LowActivity => "h2l-act",
            SortOrder::Random => "random",
            SortOrder::Reverse => "reverse",
        }
    }
}

impl FromStr for SortOrder {
    type Err = OptionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SortOrder::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| {
                invalid(
                    "literal order",
                    s,
                    "current, l2h-level, h2l-level, l2h-act, h2l-act, random or reverse",
                )
            })
    }
}

impl fmt::Display for SortOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn parse_on_off(what: &'static str, s: &str) -> Result<bool, OptionError> {
    match s {
        "on" | "true" | "1" => Ok(true),
        "off" | "false" | "0" => Ok(false),
        _ => Err(invalid(what, s, "on or off")),
    }
}

fn parse_int<T: FromStr>(what: &'static str, s: &str) -> Result<T, OptionError> {
    s.parse()
        .map_err(|_| invalid(what, s, "a non-negative integer"))
}

fn on_off(b: bool) -> &'static str {
    if b {
        "on"
    } else {
        "off"
    }
}

impl SolverConfig {
    /// Option names understood by [`set_option`](Self::set_option).
    pub const OPTION_NAMES: [&'static str; 10] = [
        "vivify",
        "viv-activation",
        "viv-select",
        "viv-sort",
        "viv-gamma",
        "pre-vivify",
        "pre-vivify-cap",
        "restart",
        "reduce",
        "seed",
    ];

    /// Set one option by name, using the command-line spelling of names and values.
    pub fn set_option(&mut self, name: &str, value: &str) -> Result<(), OptionError> {
        match name {
            "vivify" => self.vivify.enabled = parse_on_off("vivify", value)?,
            "viv-activation" => self.vivify.activation = value.parse()?,
            "viv-select" => self.vivify.selection = value.parse()?,
            "viv-sort" => self.vivify.sort_order = value.parse()?,
            "viv-gamma" => {
                let g: u32 = parse_int("viv-gamma", value)?;
                if g == 0 {
                    return Err(invalid("viv-gamma", value, "a positive integer"));
                }
                self.vivify.useful_lbd_max = g;
            }
            "pre-vivify" => self.vivify.preprocess = parse_on_off("pre-vivify", value)?,
            "pre-vivify-cap" => self.vivify.preprocess_cap = parse_int("pre-vivify-cap", value)?,
            "restart" => self.restart.mode = value.parse()?,
            "reduce" => self.reduce.mode = value.parse()?,
            "seed" => self.seed = parse_int("seed", value)?,
            _ => return Err(OptionError::UnknownOption(name.to_string())),
        }
        Ok(())
    }

    /// Compact, stable description of the policy switches, e.g. for tagging run records.
    pub fn fingerprint(&self) -> String {
        let v = &self.vivify;
        format!(
            "vivify={} act={} select={} sort={} gamma={} pre={} cap={} restart={} reduce={}",
            on_off(v.enabled),
            v.activation,
            v.selection,
            v.sort_order,
            v.useful_lbd_max,
            on_off(v.preprocess),
            v.preprocess_cap,
            self.restart.mode,
            self.reduce.mode,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for o in SortOrder::ALL {
            assert_eq!(o.to_string().parse::<SortOrder>().unwrap(), o);
        }
        for name in [
            "reduce",
            "threshold",
            "every",
            "gap500",
            "gap1000",
            "gap1500",
        ] {
            assert_eq!(name.parse::<Activation>().unwrap().to_string(), name);
        }
        for name in ["ghalf", "gfrac=0.3", "maple", "live+", "live++"] {
            assert_eq!(name.parse::<Selection>().unwrap().to_string(), name);
        }
        for name in ["glucose", "luby"] {
            assert_eq!(name.parse::<RestartMode>().unwrap().to_string(), name);
        }
        for name in ["glucose", "tiered"] {
            assert_eq!(name.parse::<ReduceMode>().unwrap().to_string(), name);
        }
    }

    #[test]
    fn bad_values_are_rejected() {
        assert!("gfrac=0".parse::<Selection>().is_err());
        assert!("gfrac=1.5".parse::<Selection>().is_err());
        assert!("gapx".parse::<Activation>().is_err());
        assert!("sideways".parse::<SortOrder>().is_err());
        let mut cfg = SolverConfig::default();
        assert_eq!(
            cfg.set_option("colour", "on"),
            Err(OptionError::UnknownOption("colour".into()))
        );
        assert!(cfg.set_option("viv-gamma", "0").is_err());
    }

    #[test]
    fn default_fingerprint() {
        assert_eq!(
            SolverConfig::default().fingerprint(),
            "vivify=on act=threshold select=live++ sort=current gamma=20 pre=on cap=100000000 \
             restart=glucose reduce=tiered"
        );
    }

    #[test]
    fn set_option_applies_values() {
        let mut cfg = SolverConfig::default();
        cfg.set_option("viv-select", "gfrac=0.25").unwrap();
        cfg.set_option("viv-activation", "gap1000").unwrap();
        cfg.set_option("vivify", "off").unwrap();
        cfg.set_option("seed", "7").unwrap();
        assert_eq!(cfg.vivify.selection, Selection::GlucoseFraction(0.25));
        assert_eq!(cfg.vivify.activation, Activation::FixedGap(1000));
        assert!(!cfg.vivify.enabled);
        assert_eq!(cfg.seed, 7);
    }
}
