//! Scripts of births, deaths and surgeries on a family of circles.

use std::collections::HashMap;
use std::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MovieError {
    #[error("event {index} uses label '{label}', which is not live")]
    DanglingLabel { index: usize, label: String },
    #[error("label '{label}' is created twice")]
    DoubleBirth { label: String },
    #[error("event {index} is not strictly later than the previous one")]
    EventOrderViolation { index: usize },
    #[error("event {index} lies outside the open interval (0, 1)")]
    TimeOutOfRange { index: usize },
    #[error("event {index} names the same label twice")]
    RepeatedLabel { index: usize },
    #[error("malformed movie file: {0}")]
    Json(String),
    #[error("event {index}: cannot parse time '{text}'")]
    BadTime { index: usize, text: String },
    #[error("event {index}: unknown kind '{kind}'")]
    BadKind { index: usize, kind: String },
    #[error("event {index}: '{kind}' takes {expected} labels, got {got}")]
    BadArity {
        index: usize,
        kind: String,
        expected: usize,
        got: usize,
    },
}

/// One change of the level set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Event<L> {
    Birth(L),
    Death(L),
    Merge {
        a: L,
        b: L,
        into: L,
    },
    Split {
        from: L,
        a: L,
        b: L,
    },
    /// A point that appears and vanishes at the same instant.
    Isolated(L),
    /// A surgery that replaces one circle by one circle.
    Band {
        from: L,
        into: L,
    },
}

impl<L> Event<L> {
    pub fn kind(&self) -> &'static str {
        match self {
            Event::Birth(_) => "birth",
            Event::Death(_) => "death",
            Event::Merge { .. } => "merge",
            Event::Split { .. } => "split",
            Event::Isolated(_) => "isolated",
            Event::Band { .. } => "band",
        }
    }

    /// Labels in the order they appear in the file format.
    pub fn labels(&self) -> Vec<&L> {
        match self {
            Event::Birth(l) | Event::Death(l) | Event::Isolated(l) => vec![l],
            Event::Merge { a, b, into } => vec![a, b, into],
            Event::Split { from, a, b } => vec![from, a, b],
            Event::Band { from, into } => vec![from, into],
        }
    }

    /// Labels live just before the event and gone after it.
    pub fn consumed(&self) -> Vec<&L> {
        match self {
            Event::Death(l) => vec![l],
            Event::Merge { a, b, .. } => vec![a, b],
            Event::Split { from, .. } | Event::Band { from, .. } => vec![from],
            Event::Birth(_) | Event::Isolated(_) => vec![],
        }
    }

    /// Labels live just after the event and absent before it.
    pub fn created(&self) -> Vec<&L> {
        match self {
            Event::Birth(l) => vec![l],
            Event::Merge { into, .. } | Event::Band { into, .. } => vec![into],
            Event::Split { a, b, .. } => vec![a, b],
            Event::Death(_) | Event::Isolated(_) => vec![],
        }
    }

    /// Change in the number of circles.
    pub fn count_change(&self) -> i64 {
        self.created().len() as i64 - self.consumed().len() as i64
    }

    /// Merges, splits and bands.
    pub fn is_surgery(&self) -> bool {
        matches!(
            self,
            Event::Merge { .. } | Event::Split { .. } | Event::Band { .. }
        )
    }

    fn map<M>(&self, mut f: impl FnMut(&L) -> M) -> Event<M> {
        match self {
            Event::Birth(l) => Event::Birth(f(l)),
            Event::Death(l) => Event::Death(f(l)),
            Event::Isolated(l) => Event::Isolated(f(l)),
            Event::Merge { a, b, into } => Event::Merge {
                a: f(a),
                b: f(b),
                into: f(into),
            },
            Event::Split { from, a, b } => Event::Split {
                from: f(from),
                a: f(a),
                b: f(b),
            },
            Event::Band { from, into } => Event::Band {
                from: f(from),
                into: f(into),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimedEvent<T, L> {
    pub t: T,
    pub event: Event<L>,
}

/// A movie as written, with free-form labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMovie<T> {
    /// Circles present from time 0.
    pub initial: Vec<String>,
    pub events: Vec<TimedEvent<T, String>>,
}

/// Life span of a label as event indices; `None` means the start or the
/// end of the movie.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Life {
    pub born: Option<usize>,
    pub died: Option<usize>,
}

/// A validated movie with labels renumbered in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepMovie<T> {
    names: Vec<String>,
    initial: Vec<usize>,
    events: Vec<TimedEvent<T, usize>>,
    lives: Vec<Life>,
}

struct Registry {
    ids: HashMap<String, usize>,
    names: Vec<String>,
    lives: Vec<Life>,
}

impl Registry {
    fn fresh(&mut self, name: &str, born: Option<usize>) -> Result<usize, MovieError> {
        if self.ids.contains_key(name) {
            return Err(MovieError::DoubleBirth {
                label: name.to_string(),
            });
        }
        let id = self.names.len();
        self.ids.insert(name.to_string(), id);
        self.names.push(name.to_string());
        self.lives.push(Life { born, died: None });
        Ok(id)
    }
}

pub fn validate_movie<T: Scalar>(raw: &RawMovie<T>) -> Result<SweepMovie<T>, MovieError> {
    let mut reg = Registry {
        ids: HashMap::new(),
        names: Vec::new(),
        lives: Vec::new(),
    };
    let mut live = Vec::new();
    let mut initial = Vec::new();
    for name in &raw.initial {
        initial.push(reg.fresh(name, None)?);
        live.push(true);
    }
    let mut events = Vec::with_capacity(raw.events.len());
    for (index, ev) in raw.events.iter().enumerate() {
        if ev.t <= T::zero() || ev.t >= T::one() {
            return Err(MovieError::TimeOutOfRange { index });
        }
        if index > 0 && ev.t <= raw.events[index - 1].t {
            return Err(MovieError::EventOrderViolation { index });
        }
        let labels = ev.event.labels();
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(MovieError::RepeatedLabel { index });
            }
        }
        let mut consumed = Vec::new();
        for name in ev.event.consumed() {
            match reg.ids.get(name.as_str()) {
                Some(&id) if live[id] => consumed.push(id),
                _ => {
                    return Err(MovieError::DanglingLabel {
                        index,
                        label: name.clone(),
                    })
                }
            }
        }
        for id in consumed {
            live[id] = false;
            reg.lives[id].died = Some(index);
        }
        let isolated = matches!(ev.event, Event::Isolated(_));
        let to_create: Vec<&String> = match &ev.event {
            Event::Isolated(l) => vec![l],
            other => other.created(),
        };
        for name in to_create {
            let id = reg.fresh(name, Some(index))?;
            live.push(!isolated);
            if isolated {
                reg.lives[id].died = Some(index);
            }
        }
        let mapped = ev.event.map(|name| reg.ids[name.as_str()]);
        events.push(TimedEvent {
            t: ev.t.clone(),
            event: mapped,
        });
    }
    Ok(SweepMovie {
        names: reg.names,
        initial,
        events,
        lives: reg.lives,
    })
}

impl<T: Scalar> SweepMovie<T> {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label_count(&self) -> usize {
        self.names.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn events(&self) -> &[TimedEvent<T, usize>] {
        &self.events
    }

    pub fn life(&self, label: usize) -> Life {
        self.lives[label]
    }

    /// Labels alive at the end of the movie.
    pub fn survivors(&self) -> Vec<usize> {
        (0..self.names.len())
            .filter(|&l| self.lives[l].died.is_none())
            .collect()
    }

    /// Interval boundaries: 0, every event time, 1.
    pub fn breakpoints(&self) -> Vec<T> {
        let mut out = vec![T::zero()];
        out.extend(self.events.iter().map(|e| e.t.clone()));
        out.push(T::one());
        out
    }

    /// Labels live on the open interval after `after` events.
    pub fn live_in_interval(&self, after: usize) -> Vec<usize> {
        (0..self.names.len())
            .filter(|&l| {
                let life = self.lives[l];
                let born_ok = life.born.is_none_or(|b| b < after);
                let died_ok = life.died.is_none_or(|d| d >= after);
                born_ok
                    && died_ok
                    && !matches!(
                        life.born.map(|b| &self.events[b].event),
                        Some(Event::Isolated(_))
                    )
            })
            .collect()
    }

    /// Number of circles at time `t`, counted from the event list; at an
    /// event time the count after the event is returned, plus any isolated
    /// point at that time.
    pub fn slice_population(&self, t: &T) -> usize {
        let time = |i: Option<usize>, default: T| i.map_or(default, |i| self.events[i].t.clone());
        (0..self.names.len())
            .filter(|&l| {
                let life = self.lives[l];
                let born = time(life.born, T::zero());
                let died = time(life.died, T::one());
                if born == died {
                    return born == *t;
                }
                born <= *t && *t < died
            })
            .count()
    }

    /// The movie with its canonical labels written out as names.
    pub fn to_raw(&self) -> RawMovie<T> {
        RawMovie {
            initial: self
                .initial
                .iter()
                .map(|&l| self.names[l].clone())
                .collect(),
            events: self
                .events
                .iter()
                .map(|e| TimedEvent {
                    t: e.t.clone(),
                    event: e.event.map(|&l| self.names[l].clone()),
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MovieFile {
    #[serde(default)]
    initial: Vec<String>,
    events: Vec<EventFile>,
}

#[derive(Serialize, Deserialize)]
struct EventFile {
    t: String,
    kind: String,
    labels: Vec<String>,
}

/// Parses the JSON movie format, with times written as fractions.
pub fn parse_movie<T: Scalar>(json: &str) -> Result<RawMovie<T>, MovieError> {
    let file: MovieFile =
        serde_json::from_str(json).map_err(|e| MovieError::Json(e.to_string()))?;
    let mut events = Vec::with_capacity(file.events.len());
    for (index, ev) in file.events.into_iter().enumerate() {
        let t = ev.t.trim().parse::<T>().map_err(|_| MovieError::BadTime {
            index,
            text: ev.t.clone(),
        })?;
        let expected = match ev.kind.as_str() {
            "birth" | "death" | "isolated" => 1,
            "band" => 2,
            "merge" | "split" => 3,
            _ => {
                return Err(MovieError::BadKind {
                    index,
                    kind: ev.kind,
                })
            }
        };
        if ev.labels.len() != expected {
            return Err(MovieError::BadArity {
                index,
                kind: ev.kind,
                expected,
                got: ev.labels.len(),
            });
        }
        let mut l = ev.labels.into_iter();
        let mut next = || l.next().unwrap();
        let event = match ev.kind.as_str() {
            "birth" => Event::Birth(next()),
            "death" => Event::Death(next()),
            "isolated" => Event::Isolated(next()),
            "band" => Event::Band {
                from: next(),
                into: next(),
            },
            "merge" => Event::Merge {
                a: next(),
                b: next(),
                into: next(),
            },
            _ => Event::Split {
                from: next(),
                a: next(),
                b: next(),
            },
        };
        events.push(TimedEvent { t, event });
    }
    Ok(RawMovie {
        initial: file.initial,
        events,
    })
}

/// Writes the JSON movie format.
pub fn movie_to_json<T: Scalar>(raw: &RawMovie<T>) -> String {
    let file = MovieFile {
        initial: raw.initial.clone(),
        events: raw
            .events
            .iter()
            .map(|e| EventFile {
                t: e.t.to_string(),
                kind: e.event.kind().to_string(),
                labels: e.event.labels().into_iter().cloned().collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("movie serializes")
}

impl<L: fmt::Display> fmt::Display for Event<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "{}({})", self.kind(), labels.join(", "))
    }
}

/// A random valid movie with at most `max_events` events.
pub fn random_movie<T: Scalar>(seed: u64, max_events: usize) -> SweepMovie<T> {
    const DENOM: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_events.clamp(1, DENOM - 1));
    let mut times: Vec<usize> = index::sample(&mut rng, DENOM - 1, n)
        .into_iter()
        .map(|k| k + 1)
        .collect();
    times.sort_unstable();
    let mut counter = 0usize;
    let mut fresh = || {
        counter += 1;
        format!("c{counter}")
    };
    let initial: Vec<String> = (0..rng.gen_range(0..=3)).map(|_| fresh()).collect();
    let mut live = initial.clone();
    let mut events = Vec::with_capacity(n);
    for k in times {
        let t = T::ratio(k as i64, DENOM as i64);
        let choice = if live.is_empty() {
            rng.gen_range(0..2) * 4
        } else if live.len() == 1 {
            [0, 1, 3, 4, 5][rng.gen_range(0..5)]
        } else {
            rng.gen_range(0..6)
        };
        let take = |rng: &mut ChaCha8Rng, live: &mut Vec<String>| {
            let i = rng.gen_range(0..live.len());
            live.swap_remove(i)
        };
        let event = match choice {
            0 => {
                let l = fresh();
                live.push(l.clone());
                Event::Birth(l)
            }
            1 => Event::Death(take(&mut rng, &mut live)),
            2 => {
                let a = take(&mut rng, &mut live);
                let b = take(&mut rng, &mut live);
                let into = fresh();
                live.push(into.clone());
                Event::Merge { a, b, into }
            }
            3 => {
                let from = take(&mut rng, &mut live);
                let (a, b) = (fresh(), fresh());
                live.push(a.clone());
                live.push(b.clone());
                Event::Split { from, a, b }
            }
            4 => Event::Isolated(fresh()),
            _ => {
                let from = take(&mut rng, &mut live);
                let into = fresh();
                live.push(into.clone());
                Event::Band { from, into }
            }
        };
        events.push(TimedEvent { t, event });
    }
    validate_movie(&RawMovie { initial, events }).expect("generated movies are valid")
}
