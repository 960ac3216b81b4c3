//! Line-oriented text formats: `9,4,3,10` for messages, `9,?,?,10` for probes.
//! Blank lines are skipped.

use super::{Message, NetworkConfig, Probe, Symbol};
use crate::error::{GbnnError, Result};

fn parse_err(line: usize, message: impl Into<String>) -> GbnnError {
    GbnnError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_symbol(field: &str, line: usize) -> Result<usize> {
    field
        .trim()
        .parse::<usize>()
        .map_err(|e| parse_err(line, format!("bad symbol {:?}: {e}", field.trim())))
}

fn with_line<T>(r: Result<T>, line: usize) -> Result<T> {
    r.map_err(|e| match e {
        GbnnError::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    })
}

pub fn parse_message(line: &str, config: &NetworkConfig) -> Result<Message> {
    parse_message_at(line, config, 1)
}

fn parse_message_at(line: &str, config: &NetworkConfig, no: usize) -> Result<Message> {
    let symbols = line
        .split(',')
        .map(|f| parse_symbol(f, no))
        .collect::<Result<Vec<_>>>()?;
    with_line(Message::new(symbols, config), no)
}

pub fn parse_probe(line: &str, config: &NetworkConfig) -> Result<Probe> {
    parse_probe_at(line, config, 1)
}

fn parse_probe_at(line: &str, config: &NetworkConfig, no: usize) -> Result<Probe> {
    let entries = line
        .split(',')
        .map(|f| match f.trim() {
            "?" => Ok(Symbol::Erased),
            _ => parse_symbol(f, no).map(Symbol::Known),
        })
        .collect::<Result<Vec<_>>>()?;
    with_line(Probe::new(entries, config), no)
}

fn non_blank(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_messages(text: &str, config: &NetworkConfig) -> Result<Vec<Message>> {
    non_blank(text)
        .map(|(no, l)| parse_message_at(l, config, no))
        .collect()
}

pub fn parse_probes(text: &str, config: &NetworkConfig) -> Result<Vec<Probe>> {
    non_blank(text)
        .map(|(no, l)| parse_probe_at(l, config, no))
        .collect()
}

pub fn format_message(message: &Message) -> String {
    message
        .symbols()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn format_probe(probe: &Probe) -> String {
    probe
        .entries()
        .iter()
        .map(|e| match e {
            Symbol::Known(s) => s.to_string(),
            Symbol::Erased => "?".to_string(),
        })
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_messages_and_probes() {
        let config = NetworkConfig::new(4, 16).unwrap();
        let msgs = parse_messages("9,4,3,10\n\n 0, 1,2,15 \n", &config).unwrap();
        assert_eq!(msgs.len(), 2);
        assert_eq!(msgs[1].symbols(), &[0, 1, 2, 15]);
        assert_eq!(format_message(&msgs[0]), "9,4,3,10");

        let p = parse_probe("9,?,?,10", &config).unwrap();
        assert_eq!(p.erased_count(), 2);
        assert_eq!(format_probe(&p), "9,?,?,10");
    }

    #[test]
    fn reports_the_failing_line() {
        let config = NetworkConfig::new(4, 16).unwrap();
        match parse_messages("1,2,3,4\n1,2,x,4\n", &config) {
            Err(GbnnError::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_messages("1,2,3,4\n\n1,2,3,16\n", &config) {
            Err(GbnnError::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_probe("1,?,3", &config).is_err());
    }
}
