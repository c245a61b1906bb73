//! Shared canonical root systems and their enumerated groups, keyed by type.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::root_system::{build_arc, CartanType, RootSystem};
use crate::weyl::Group;

/// A canonical root system of a given type with its enumerated group.
#[derive(Debug)]
pub struct Model {
    pub rs: Arc<RootSystem>,
    pub group: Group,
}

fn registry() -> &'static Mutex<HashMap<CartanType, Arc<OnceLock<Arc<Model>>>>> {
    static REG: OnceLock<Mutex<HashMap<CartanType, Arc<OnceLock<Arc<Model>>>>>> = OnceLock::new();
    REG.get_or_init(Default::default)
}

/// The canonical root system of type `t`, without its group.
pub fn system(t: CartanType) -> Arc<RootSystem> {
    static SYS: OnceLock<Mutex<HashMap<CartanType, Arc<RootSystem>>>> = OnceLock::new();
    SYS.get_or_init(Default::default)
        .lock()
        .unwrap()
        .entry(t)
        .or_insert_with(|| build_arc(t.family, t.rank).expect("valid Cartan type"))
        .clone()
}

/// The canonical model of type `t`; built once per process.
///
/// Panics if the group is too large to enumerate; callers only ask for
/// small types.
pub fn model(t: CartanType) -> Arc<Model> {
    let cell = registry().lock().unwrap().entry(t).or_default().clone();
    cell.get_or_init(|| {
        let rs = system(t);
        let group = Group::new(&rs).expect("model group fits the cap");
        Arc::new(Model { rs, group })
    })
    .clone()
}
