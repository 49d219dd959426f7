//! WireFrame: the byte encodings of a [`FrameState`].
//!
//! Binary layout, all integers and floats little-endian:
//!
//! ```text
//! magic    b"MSWF"
//! version  u16
//! flags    u16        bit 0 haptic_pulse
//! tick     u64
//! time     f64
//! bodies   u32 count, then per body:
//!            str marker, u8 visible, u32 n,
//!            n×3 f64 positions, n f64 opacities, n f64 halos
//! dashed   u32 count, then: str label, vec3 from, vec3 to, f64 distance,
//!            str color, u32 m, m×3 f64 points
//! lines    u32 count, then: str label, vec3 from, vec3 to, str color,
//!            f64 width, f64 opacity
//! scalars  u16 count, then count × (u16 scalar id, f64 value); absent = null
//! keys     u32 count, then: str label, f64 distance
//! proton   u8 present, [vec3]
//! linker   u8 present, [u32 n, n×3 f64]
//! product  u8 present, [2×(u32,u32,u32,u32) new bonds, i8 face,
//!            u32 rings, per ring u32 k, k×(u32 body, u32 bead)]
//! spectrum u8 present, [f64 shift, f64 linewidth, f64s axis, f64s intensity]
//! saxs     u8 present, [profile calculated, profile reference]
//! errors   u32 count, then: u8 feature id, str message
//! ```
//!
//! `str` is a u32 byte length followed by UTF-8; `f64s` is a u32 count
//! followed by the values; a `profile` is `f64s q, f64s intensity, u8 has_sigma,
//! [f64s sigma]`. Scalar and feature ids are indices into [`Scalar::ALL`]
//! and [`Feature::ALL`] for the given version.
//!
//! The JSON encoding wraps the serde form of the frame as
//! `{"format": "MSWF-JSON", "version": 1, "frame": {...}}`. Finite floats
//! round-trip exactly; non-finite values are written as `null` and do not
//! decode.

use serde::{Deserialize, Serialize};

use crate::engine::{BodyFrame, DashedLine, Feature, FeatureError, FrameState, Line, Readouts, SaxsSeries, Scalar};
use crate::error::{Error, Result};
use crate::interact::{FaceSign, ProductTopology};
use crate::observables::{SaxsProfile, Spectrum};
use crate::Vec3;

pub const WIRE_MAGIC: [u8; 4] = *b"MSWF";
pub const WIRE_VERSION: u16 = 1;
pub const JSON_FORMAT: &str = "MSWF-JSON";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Encoding {
    #[default]
    Binary,
    Json,
}

impl Encoding {
    pub fn from_code(code: u32) -> Option<Encoding> {
        match code {
            0 => Some(Encoding::Binary),
            1 => Some(Encoding::Json),
            _ => None,
        }
    }
}

pub fn encode(frame: &FrameState, encoding: Encoding) -> Vec<u8> {
    match encoding {
        Encoding::Binary => encode_binary(frame),
        Encoding::Json => encode_json(frame),
    }
}

/// Decode either encoding, sniffing the first bytes.
pub fn decode(bytes: &[u8]) -> Result<FrameState> {
    if bytes.starts_with(&WIRE_MAGIC) {
        decode_binary(bytes)
    } else {
        decode_json(bytes)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonEnvelope<F> {
    format: String,
    version: u16,
    frame: F,
}

pub fn encode_json(frame: &FrameState) -> Vec<u8> {
    let envelope = JsonEnvelope {
        format: JSON_FORMAT.into(),
        version: WIRE_VERSION,
        frame,
    };
    serde_json::to_vec(&envelope).expect("frame state always serializes")
}

pub fn decode_json(bytes: &[u8]) -> Result<FrameState> {
    let envelope: JsonEnvelope<FrameState> = serde_json::from_slice(bytes)?;
    if envelope.format != JSON_FORMAT || envelope.version != WIRE_VERSION {
        return Err(Error::Wire(format!(
            "unsupported JSON frame {} v{}",
            envelope.format, envelope.version
        )));
    }
    Ok(envelope.frame)
}

struct Writer(Vec<u8>);

impl Writer {
    fn u8(&mut self, v: u8) {
        self.0.push(v);
    }
    fn u16(&mut self, v: u16) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn len(&mut self, n: usize) {
        self.u32(u32::try_from(n).expect("wire block longer than u32::MAX"));
    }
    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn f64(&mut self, v: f64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn vec3(&mut self, v: &Vec3) {
        for x in v.iter() {
            self.f64(*x);
        }
    }
    fn vec3s(&mut self, vs: &[Vec3]) {
        self.len(vs.len());
        for v in vs {
            self.vec3(v);
        }
    }
    fn f64s(&mut self, vs: &[f64]) {
        self.len(vs.len());
        for &v in vs {
            self.f64(v);
        }
    }
    fn str(&mut self, s: &str) {
        self.len(s.len());
        self.0.extend_from_slice(s.as_bytes());
    }
    fn profile(&mut self, p: &SaxsProfile) {
        self.f64s(&p.q);
        self.f64s(&p.intensity);
        match &p.sigma {
            Some(s) => {
                self.u8(1);
                self.f64s(s);
            }
            None => self.u8(0),
        }
    }
}

pub fn encode_binary(frame: &FrameState) -> Vec<u8> {
    let mut w = Writer(Vec::with_capacity(256));
    w.0.extend_from_slice(&WIRE_MAGIC);
    w.u16(WIRE_VERSION);
    w.u16(u16::from(frame.haptic_pulse));
    w.u64(frame.tick);
    w.f64(frame.time);

    w.len(frame.bodies.len());
    for b in &frame.bodies {
        w.str(&b.marker);
        w.u8(u8::from(b.visible));
        w.len(b.positions.len());
        for p in &b.positions {
            w.vec3(p);
        }
        for &o in &b.opacities {
            w.f64(o);
        }
        for &h in &b.halos {
            w.f64(h);
        }
    }

    w.len(frame.dashed.len());
    for d in &frame.dashed {
        w.str(&d.label);
        w.vec3(&d.from);
        w.vec3(&d.to);
        w.f64(d.distance);
        w.str(&d.color);
        w.vec3s(&d.points);
    }

    w.len(frame.lines.len());
    for l in &frame.lines {
        w.str(&l.label);
        w.vec3(&l.from);
        w.vec3(&l.to);
        w.str(&l.color);
        w.f64(l.width);
        w.f64(l.opacity);
    }

    let present: Vec<(Scalar, f64)> = frame.readouts.iter().filter_map(|(s, v)| v.map(|v| (s, v))).collect();
    w.u16(present.len() as u16);
    for (s, v) in present {
        w.u16(s.index() as u16);
        w.f64(v);
    }

    w.len(frame.key_distances.len());
    for (label, d) in &frame.key_distances {
        w.str(label);
        w.f64(*d);
    }

    match &frame.proton_position {
        Some(p) => {
            w.u8(1);
            w.vec3(p);
        }
        None => w.u8(0),
    }
    match &frame.linker {
        Some(chain) => {
            w.u8(1);
            w.vec3s(chain);
        }
        None => w.u8(0),
    }
    match &frame.product {
        Some(p) => {
            w.u8(1);
            for ((a0, a1), (b0, b1)) in p.new_bonds {
                for x in [a0, a1, b0, b1] {
                    w.len(x);
                }
            }
            w.u8(p.face_sign.code() as i8 as u8);
            w.len(p.rings.len());
            for ring in &p.rings {
                w.len(ring.len());
                for &(body, bead) in ring {
                    w.len(body);
                    w.len(bead);
                }
            }
        }
        None => w.u8(0),
    }
    match &frame.spectrum {
        Some(s) => {
            w.u8(1);
            w.f64(s.shift);
            w.f64(s.linewidth);
            w.f64s(&s.axis);
            w.f64s(&s.intensity);
        }
        None => w.u8(0),
    }
    match &frame.saxs {
        Some(s) => {
            w.u8(1);
            w.profile(&s.calculated);
            w.profile(&s.reference);
        }
        None => w.u8(0),
    }

    w.len(frame.errors.len());
    for e in &frame.errors {
        w.u8(e.feature.index() as u8);
        w.str(&e.message);
    }
    w.0
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .at
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Wire(format!("truncated frame: need {n} bytes at offset {}", self.at)))?;
        let out = &self.bytes[self.at..end];
        self.at = end;
        Ok(out)
    }
    fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        Ok(self.take(N)?.try_into().expect("take returns N bytes"))
    }
    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }
    fn flag(&mut self) -> Result<bool> {
        match self.u8()? {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(Error::Wire(format!("bad flag byte {other} at offset {}", self.at - 1))),
        }
    }
    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.array()?))
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.array()?))
    }
    /// A count, sanity-checked against the bytes left.
    fn len(&mut self, min_item: usize) -> Result<usize> {
        let n = self.u32()? as usize;
        if n.saturating_mul(min_item) > self.bytes.len() - self.at {
            return Err(Error::Wire(format!(
                "count {n} at offset {} overruns the frame",
                self.at - 4
            )));
        }
        Ok(n)
    }
    fn index(&mut self) -> Result<usize> {
        Ok(self.u32()? as usize)
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.array()?))
    }
    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.array()?))
    }
    fn vec3(&mut self) -> Result<Vec3> {
        Ok(Vec3::new(self.f64()?, self.f64()?, self.f64()?))
    }
    fn vec3s(&mut self) -> Result<Vec<Vec3>> {
        let n = self.len(24)?;
        (0..n).map(|_| self.vec3()).collect()
    }
    fn f64s(&mut self) -> Result<Vec<f64>> {
        let n = self.len(8)?;
        (0..n).map(|_| self.f64()).collect()
    }
    fn str(&mut self) -> Result<String> {
        let n = self.len(1)?;
        let bytes = self.take(n)?;
        String::from_utf8(bytes.to_vec()).map_err(|e| Error::Wire(format!("string is not UTF-8: {e}")))
    }
    fn profile(&mut self) -> Result<SaxsProfile> {
        let q = self.f64s()?;
        let intensity = self.f64s()?;
        let sigma = if self.flag()? { Some(self.f64s()?) } else { None };
        Ok(SaxsProfile { q, intensity, sigma })
    }
}

pub fn decode_binary(bytes: &[u8]) -> Result<FrameState> {
    let mut r = Reader { bytes, at: 0 };
    if r.array::<4>()? != WIRE_MAGIC {
        return Err(Error::Wire("missing MSWF magic".into()));
    }
    let version = r.u16()?;
    if version != WIRE_VERSION {
        return Err(Error::Wire(format!("unsupported wire version {version}")));
    }
    let flags = r.u16()?;
    let tick = r.u64()?;
    let time = r.f64()?;

    let n_bodies = r.len(1)?;
    let mut bodies = Vec::with_capacity(n_bodies);
    for _ in 0..n_bodies {
        let marker = r.str()?;
        let visible = r.flag()?;
        let n = r.len(40)?;
        let positions = (0..n).map(|_| r.vec3()).collect::<Result<_>>()?;
        let opacities = (0..n).map(|_| r.f64()).collect::<Result<_>>()?;
        let halos = (0..n).map(|_| r.f64()).collect::<Result<_>>()?;
        bodies.push(BodyFrame {
            marker,
            visible,
            positions,
            opacities,
            halos,
        });
    }

    let n = r.len(1)?;
    let mut dashed = Vec::with_capacity(n);
    for _ in 0..n {
        dashed.push(DashedLine {
            label: r.str()?,
            from: r.vec3()?,
            to: r.vec3()?,
            distance: r.f64()?,
            color: r.str()?,
            points: r.vec3s()?,
        });
    }

    let n = r.len(1)?;
    let mut lines = Vec::with_capacity(n);
    for _ in 0..n {
        lines.push(Line {
            label: r.str()?,
            from: r.vec3()?,
            to: r.vec3()?,
            color: r.str()?,
            width: r.f64()?,
            opacity: r.f64()?,
        });
    }

    let mut readouts = Readouts::default();
    for _ in 0..r.u16()? {
        let id = r.u16()? as usize;
        let scalar = *Scalar::ALL
            .get(id)
            .ok_or_else(|| Error::Wire(format!("unknown scalar id {id}")))?;
        readouts.set(scalar, r.f64()?);
    }

    let n = r.len(1)?;
    let mut key_distances = Vec::with_capacity(n);
    for _ in 0..n {
        key_distances.push((r.str()?, r.f64()?));
    }

    let proton_position = if r.flag()? { Some(r.vec3()?) } else { None };
    let linker = if r.flag()? { Some(r.vec3s()?) } else { None };
    let product = if r.flag()? {
        let mut bond =
            || -> Result<((usize, usize), (usize, usize))> { Ok(((r.index()?, r.index()?), (r.index()?, r.index()?))) };
        let new_bonds = [bond()?, bond()?];
        let face_sign = match r.u8()? as i8 {
            0 => FaceSign::Undetermined,
            1 => FaceSign::Plus,
            -1 => FaceSign::Minus,
            other => return Err(Error::Wire(format!("bad face code {other}"))),
        };
        let n_rings = r.len(4)?;
        let mut rings = Vec::with_capacity(n_rings);
        for _ in 0..n_rings {
            let k = r.len(8)?;
            rings.push(
                (0..k)
                    .map(|_| Ok((r.index()?, r.index()?)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Some(ProductTopology {
            new_bonds,
            rings,
            face_sign,
        })
    } else {
        None
    };
    let spectrum = if r.flag()? {
        let shift = r.f64()?;
        let linewidth = r.f64()?;
        Some(Spectrum {
            axis: r.f64s()?,
            intensity: r.f64s()?,
            shift,
            linewidth,
        })
    } else {
        None
    };
    let saxs = if r.flag()? {
        Some(SaxsSeries {
            calculated: r.profile()?,
            reference: r.profile()?,
        })
    } else {
        None
    };

    let n = r.len(5)?;
    let mut errors = Vec::with_capacity(n);
    for _ in 0..n {
        let id = r.u8()? as usize;
        let feature = *Feature::ALL
            .get(id)
            .ok_or_else(|| Error::Wire(format!("unknown feature id {id}")))?;
        errors.push(FeatureError {
            feature,
            message: r.str()?,
        });
    }
    if r.at != bytes.len() {
        return Err(Error::Wire(format!("{} trailing bytes", bytes.len() - r.at)));
    }

    Ok(FrameState {
        tick,
        time,
        bodies,
        dashed,
        lines,
        readouts,
        key_distances,
        haptic_pulse: flags & 1 == 1,
        proton_position,
        linker,
        product,
        spectrum,
        saxs,
        errors,
    })
}
