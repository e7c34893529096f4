//! Opt-in memoization of Kan packages for the duration of a closure.
//!
//! Law checks build the same extensions many times over; inside
//! [`with_kan_cache`] each `(side, choice, map, input)` is computed once.

use std::any::{Any, TypeId};
use std::cell::RefCell;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::groupoid::GroupoidMap;
use crate::pullback::RepChoice;
use crate::rep::Representation;
use crate::scalar::Scalar;

use super::{KanPackage, Side};

/// Hashes only the cheap structural parts; equality decides collisions.
#[derive(PartialEq, Eq)]
struct Key<S: Scalar> {
    side: Side,
    choice: RepChoice,
    map: GroupoidMap,
    input: Representation<S>,
}

impl<S: Scalar> Hash for Key<S> {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.side.hash(h);
        self.choice.hash(h);
        self.map.object_map().hash(h);
        for x in 0..self.map.source().len() {
            self.map.hom_map(x).hash(h);
        }
        self.input.dims().hash(h);
    }
}

impl<S: Scalar> Key<S> {
    fn new(side: Side, choice: RepChoice, f: &GroupoidMap, v: &Representation<S>) -> Self {
        Key {
            side,
            choice,
            map: f.clone(),
            input: v.clone(),
        }
    }
}

type Table<S> = HashMap<Key<S>, KanPackage<S>>;

thread_local! {
    static CACHE: RefCell<Option<HashMap<TypeId, Box<dyn Any>>>> = const { RefCell::new(None) };
}

/// Runs `body` with Kan packages memoized on this thread. Nested calls share
/// the outermost cache.
pub fn with_kan_cache<R>(body: impl FnOnce() -> R) -> R {
    let outer = CACHE.with(|c| {
        let mut c = c.borrow_mut();
        let fresh = c.is_none();
        if fresh {
            *c = Some(HashMap::new());
        }
        fresh
    });
    struct Reset(bool);
    impl Drop for Reset {
        fn drop(&mut self) {
            if self.0 {
                CACHE.with(|c| *c.borrow_mut() = None);
            }
        }
    }
    let _reset = Reset(outer);
    body()
}

pub(super) fn lookup<S: Scalar>(
    side: Side,
    choice: RepChoice,
    f: &GroupoidMap,
    v: &Representation<S>,
) -> Option<KanPackage<S>> {
    CACHE.with(|c| {
        let c = c.borrow();
        let table = c.as_ref()?.get(&TypeId::of::<S>())?.downcast_ref::<Table<S>>()?;
        table.get(&Key::new(side, choice, f, v)).cloned()
    })
}

pub(super) fn store<S: Scalar>(package: &KanPackage<S>) {
    CACHE.with(|c| {
        let mut c = c.borrow_mut();
        let Some(all) = c.as_mut() else {
            return;
        };
        let table = all
            .entry(TypeId::of::<S>())
            .or_insert_with(|| Box::new(Table::<S>::new()))
            .downcast_mut::<Table<S>>()
            .expect("tables are keyed by scalar type");
        let key = Key::new(package.side, package.choice, &package.map, &package.input);
        table.insert(key, package.clone());
    })
}

/// Whether a cache is active on this thread.
pub fn kan_cache_active() -> bool {
    CACHE.with(|c| c.borrow().is_some())
}
