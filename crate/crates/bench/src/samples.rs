//! Raw per-trial timings and their CSV form.

use std::fmt;
use std::io;
use std::path::Path;
use std::str::FromStr;

use maidr::fixtures::{Kind, Layer};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    With,
    Without,
}

impl Condition {
    pub const ALL: [Condition; 2] = [Condition::Without, Condition::With];

    pub fn as_str(self) -> &'static str {
        match self {
            Condition::With => "with",
            Condition::Without => "without",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "with" => Ok(Condition::With),
            "without" => Ok(Condition::Without),
            _ => Err(format!("unknown condition `{s}` (expected with or without)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    #[serde(with = "kind_slug")]
    pub fixture: Kind,
    pub layer: Layer,
    pub condition: Condition,
    pub trial: usize,
    pub ms: f64,
}

mod kind_slug {
    use maidr::fixtures::Kind;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(k: &Kind, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(k.slug())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Kind, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn write_csv(samples: &[Sample], out: impl io::Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in samples {
        w.serialize(s)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(input: impl io::Read) -> csv::Result<Vec<Sample>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

pub fn read_csv_file(path: &Path) -> csv::Result<Vec<Sample>> {
    read_csv(std::fs::File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let samples = vec![
            Sample { fixture: Kind::HorizontalBox, layer: Layer::Wrapper, condition: Condition::With, trial: 0, ms: 12.5 },
            Sample { fixture: Kind::Bar, layer: Layer::Direct, condition: Condition::Without, trial: 1, ms: 0.1 + 0.2 },
        ];
        let mut buf = Vec::new();
        write_csv(&samples, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("fixture,layer,condition,trial,ms\nhorizontal-box,wrapper,with,0,12.5\n"));
        assert_eq!(read_csv(&buf[..]).unwrap(), samples);
    }
}
