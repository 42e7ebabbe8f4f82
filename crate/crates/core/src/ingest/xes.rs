use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use quick_xml::escape::escape;
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use crate::activity::Activity;
use crate::error::Error;
use crate::log::{EventLog, Trace};

#[derive(Default)]
struct Builder {
    traces: Vec<Trace>,
    /// (name of current event, index of event in its trace)
    event: Option<(Option<String>, usize)>,
    in_trace: bool,
    depth_in_event: usize,
}

impl Builder {
    fn start(&mut self, e: &BytesStart, empty: bool) -> Result<(), Error> {
        let name = e.local_name();
        match name.as_ref() {
            b"trace" if !self.in_trace => {
                self.traces.push(Trace::new(self.traces.len() as u64, Vec::new()));
                self.in_trace = !empty;
            }
            b"event" if self.in_trace && self.event.is_none() => {
                let idx = self.traces.last().map_or(0, |t| t.events.len());
                self.event = Some((None, idx));
                self.depth_in_event = 0;
                if empty {
                    self.end_event()?;
                }
            }
            b"string" if self.depth_in_event == 0 && self.event.is_some() => {
                let mut key = None;
                let mut value = None;
                for attr in e.attributes() {
                    let attr = attr.map_err(|err| Error::Xes(err.to_string()))?;
                    let v = attr.unescape_value().map_err(|err| Error::Xes(err.to_string()))?;
                    match attr.key.local_name().as_ref() {
                        b"key" => key = Some(v.into_owned()),
                        b"value" => value = Some(v.into_owned()),
                        _ => {}
                    }
                }
                if key.as_deref() == Some("concept:name") {
                    self.event.as_mut().unwrap().0 = value;
                }
                if !empty {
                    self.depth_in_event += 1;
                }
            }
            _ => {
                if self.event.is_some() && !empty {
                    self.depth_in_event += 1;
                }
            }
        }
        Ok(())
    }

    fn end(&mut self, local: &[u8]) -> Result<(), Error> {
        if self.event.is_some() {
            if self.depth_in_event > 0 {
                self.depth_in_event -= 1;
                return Ok(());
            }
            if local == b"event" {
                return self.end_event();
            }
        }
        if local == b"trace" {
            self.in_trace = false;
        }
        Ok(())
    }

    fn end_event(&mut self) -> Result<(), Error> {
        let (name, idx) = self.event.take().unwrap();
        let trace = self.traces.last_mut().unwrap();
        let at = |msg: String| Error::Xes(format!("trace {}, event {idx}: {msg}", trace.id));
        let Some(name) = name else {
            return Err(at("missing concept:name".into()));
        };
        let a = Activity::new(&name).map_err(|e| at(e.to_string()))?;
        trace.events.push(a);
        Ok(())
    }
}

/// Reads the XES subset: one trace per `<trace>` in document order, one
/// activity per `<event>` from its `concept:name` string attribute.
pub fn parse_xes<R: BufRead>(input: R) -> Result<EventLog, Error> {
    let mut reader = Reader::from_reader(input);
    let mut buf = Vec::new();
    let mut b = Builder::default();
    let mut seen_root = false;
    loop {
        let pos = reader.buffer_position();
        let ev = reader
            .read_event_into(&mut buf)
            .map_err(|e| Error::Xes(format!("malformed XML near byte {pos}: {e}")))?;
        match ev {
            Event::Start(e) => {
                seen_root = true;
                b.start(&e, false)?;
            }
            Event::Empty(e) => {
                seen_root = true;
                b.start(&e, true)?;
            }
            Event::End(e) => b.end(e.local_name().as_ref())?,
            Event::Eof => break,
            _ => {}
        }
        buf.clear();
    }
    if !seen_root {
        return Err(Error::Xes("document has no root element".into()));
    }
    EventLog::new(b.traces)
}

pub fn parse_xes_str(text: &str) -> Result<EventLog, Error> {
    parse_xes(text.as_bytes())
}

/// Opens a `.xes` file; gzip input is detected from its magic bytes.
pub fn read_xes_file(path: impl AsRef<Path>) -> Result<EventLog, Error> {
    let mut file = BufReader::new(File::open(path)?);
    let gz = file.fill_buf()?.starts_with(&[0x1f, 0x8b]);
    if gz {
        parse_xes(BufReader::new(MultiGzDecoder::new(file)))
    } else {
        parse_xes(file)
    }
}

/// Gunzips `bytes` if needed.
pub fn parse_xes_bytes(bytes: &[u8]) -> Result<EventLog, Error> {
    if bytes.starts_with(&[0x1f, 0x8b]) {
        let mut text = Vec::new();
        MultiGzDecoder::new(bytes).read_to_end(&mut text)?;
        parse_xes(text.as_slice())
    } else {
        parse_xes(bytes)
    }
}

pub fn write_xes(log: &EventLog) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <log xes.version=\"1.0\" xmlns=\"http://www.xes-standard.org/\">\n  \
         <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n",
    );
    for t in log.traces() {
        out.push_str("  <trace>\n");
        out.push_str(&format!("    <string key=\"concept:name\" value=\"{}\"/>\n", t.id));
        for a in &t.events {
            out.push_str("    <event>\n");
            out.push_str(&format!("      <string key=\"concept:name\" value=\"{}\"/>\n", escape(a.as_str())));
            out.push_str("    </event>\n");
        }
        out.push_str("  </trace>\n");
    }
    out.push_str("</log>\n");
    out
}
