//! Flat `key = value` config files with `[section]` headers.
//!
//! The format: blank lines and `#` comments are ignored, section headers
//! are bracketed names, and every other line is `key = value` with
//! whitespace trimmed on both sides. Values are kept verbatim; typed
//! accessors parse on demand. Later assignments to the same key win.

use super::IoError;
use std::fmt::Write as _;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Conf {
    sections: Vec<(String, Vec<(String, String)>)>,
}

impl Conf {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        let mut conf = Conf::new();
        let mut current = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or(IoError::Malformed {
                    line: lineno,
                    msg: "unclosed section header".into(),
                })?;
                current = name.trim().to_string();
                if conf.section(&current).is_none() {
                    conf.sections.push((current.clone(), Vec::new()));
                }
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(IoError::Malformed {
                    line: lineno,
                    msg: format!("expected `key = value`, got {line:?}"),
                });
            };
            conf.set(&current, key.trim(), value.trim());
        }
        Ok(conf)
    }

    fn section(&self, name: &str) -> Option<&Vec<(String, String)>> {
        self.sections
            .iter()
            .find(|(s, _)| s == name)
            .map(|(_, kv)| kv)
    }

    pub fn set(&mut self, section: &str, key: &str, value: &str) {
        let kv = match self.sections.iter_mut().find(|(s, _)| s == section) {
            Some((_, kv)) => kv,
            None => {
                self.sections.push((section.to_string(), Vec::new()));
                &mut self.sections.last_mut().unwrap().1
            }
        };
        match kv.iter_mut().find(|(k, _)| k == key) {
            Some((_, v)) => *v = value.to_string(),
            None => kv.push((key.to_string(), value.to_string())),
        }
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.section(section)?
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn get_parsed<T: std::str::FromStr>(
        &self,
        section: &str,
        key: &str,
    ) -> Result<Option<T>, String> {
        match self.get(section, key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                format!("config key [{section}] {key}: cannot parse {raw:?}")
            }),
        }
    }

    /// Comma-separated list of f64, e.g. mixture weights.
    pub fn get_f64_list(&self, section: &str, key: &str) -> Result<Option<Vec<f64>>, String> {
        match self.get(section, key) {
            None => Ok(None),
            Some(raw) => raw
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| format!("config key [{section}] {key}: bad number {s:?}"))
                })
                .collect::<Result<Vec<f64>, _>>()
                .map(Some),
        }
    }

    pub fn keys(&self, section: &str) -> Vec<&str> {
        self.section(section)
            .map(|kv| kv.iter().map(|(k, _)| k.as_str()).collect())
            .unwrap_or_default()
    }

    pub fn section_names(&self) -> Vec<&str> {
        self.sections.iter().map(|(s, _)| s.as_str()).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, kv) in &self.sections {
            if kv.is_empty() && name.is_empty() {
                continue;
            }
            if !name.is_empty() {
                let _ = writeln!(out, "[{name}]");
            }
            for (k, v) in kv {
                let _ = writeln!(out, "{k} = {v}");
            }
            let _ = writeln!(out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_lookup() {
        let text = "\n# a comment\ntop = 1\n[dataset]\nname = two_spheres\nn_points = 1200\n\n[constraint]\nkind = angle\ntheta_degrees = 30.0\n";
        let c = Conf::parse(text).unwrap();
        assert_eq!(c.get("", "top"), Some("1"));
        assert_eq!(c.get("dataset", "name"), Some("two_spheres"));
        assert_eq!(
            c.get_parsed::<usize>("dataset", "n_points").unwrap(),
            Some(1200)
        );
        assert_eq!(
            c.get_parsed::<f64>("constraint", "theta_degrees").unwrap(),
            Some(30.0)
        );
        assert_eq!(c.get("dataset", "missing"), None);
        assert!(c.get_parsed::<usize>("dataset", "name").is_err());
    }

    #[test]
    fn last_assignment_wins() {
        let c = Conf::parse("[a]\nk = 1\nk = 2\n").unwrap();
        assert_eq!(c.get("a", "k"), Some("2"));
    }

    #[test]
    fn render_round_trips() {
        let mut c = Conf::new();
        c.set("dataset", "name", "two_spirals");
        c.set("dataset", "weights", "0.5, 0.5");
        c.set("pbc", "k", "2");
        let text = c.render();
        let back = Conf::parse(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = Conf::parse("[ok]\nbroken line\n").unwrap_err();
        assert!(matches!(err, IoError::Malformed { line: 2, .. }));
        let err = Conf::parse("[unclosed\n").unwrap_err();
        assert!(matches!(err, IoError::Malformed { line: 1, .. }));
    }

    #[test]
    fn f64_lists() {
        let c = Conf::parse("[d]\nw = 0.25, 0.75\n").unwrap();
        assert_eq!(c.get_f64_list("d", "w").unwrap(), Some(vec![0.25, 0.75]));
        let bad = Conf::parse("[d]\nw = 0.25, oops\n").unwrap();
        assert!(bad.get_f64_list("d", "w").is_err());
    }
}
