use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::readouts::Feature;
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verb {
    /// Clash detection and electrostatics together.
    Force,
    Restraint,
    Saxs,
    Reaction,
    Proton,
    Linker,
}

impl Verb {
    pub fn features(self) -> &'static [Feature] {
        match self {
            Verb::Force => &[Feature::Clash, Feature::Electrostatics],
            Verb::Restraint => &[Feature::Restraint],
            Verb::Saxs => &[Feature::Saxs],
            Verb::Reaction => &[Feature::Reaction],
            Verb::Proton => &[Feature::Proton],
            Verb::Linker => &[Feature::Linker],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verb::Force => "force",
            Verb::Restraint => "restraint",
            Verb::Saxs => "saxs",
            Verb::Reaction => "reaction",
            Verb::Proton => "proton",
            Verb::Linker => "linker",
        }
    }
}

impl FromStr for Verb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "force" => Verb::Force,
            "restraint" => Verb::Restraint,
            "saxs" => Verb::Saxs,
            "reaction" => Verb::Reaction,
            "proton" => Verb::Proton,
            "linker" => Verb::Linker,
            other => return Err(Error::Command(format!("unknown verb `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arg {
    On,
    Off,
    Reset,
}

impl FromStr for Arg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "on" => Arg::On,
            "off" => Arg::Off,
            "reset" => Arg::Reset,
            other => return Err(Error::Command(format!("unknown argument `{other}`"))),
        })
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arg::On => "on",
            Arg::Off => "off",
            Arg::Reset => "reset",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineCommand {
    pub verb: Verb,
    pub arg: Arg,
}

impl EngineCommand {
    pub fn new(verb: Verb, arg: Arg) -> Self {
        Self { verb, arg }
    }

    pub fn parse(verb: &str, arg: &str) -> Result<Self, Error> {
        Ok(Self::new(verb.parse()?, arg.parse()?))
    }
}

/// `"saxs on"` style text.
impl FromStr for EngineCommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut words = s.split_whitespace();
        match (words.next(), words.next(), words.next()) {
            (Some(v), Some(a), None) => Self::parse(v, a),
            _ => Err(Error::Command(format!("expected `<verb> <on|off|reset>`, got `{s}`"))),
        }
    }
}

impl fmt::Display for EngineCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.verb.name(), self.arg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let c: EngineCommand = "SAXS on".parse().unwrap();
        assert_eq!(c, EngineCommand::new(Verb::Saxs, Arg::On));
        assert_eq!(c.to_string(), "saxs on");
        assert!("dance on".parse::<EngineCommand>().is_err());
        assert!("saxs maybe".parse::<EngineCommand>().is_err());
        assert!("saxs".parse::<EngineCommand>().is_err());
        assert_eq!(Verb::Force.features().len(), 2);
    }
}
