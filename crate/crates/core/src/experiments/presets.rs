//! Named configurations reproducing each figure's parameters.

const PRESETS: &[(&str, &str)] = &[
    ("fig2", include_str!("../../presets/fig2.conf")),
    ("fig3a", include_str!("../../presets/fig3a.conf")),
    ("fig3b", include_str!("../../presets/fig3b.conf")),
    ("fig3c", include_str!("../../presets/fig3c.conf")),
    ("fig3d", include_str!("../../presets/fig3d.conf")),
    ("fig4a", include_str!("../../presets/fig4a.conf")),
    ("fig4b", include_str!("../../presets/fig4b.conf")),
    ("fig4c", include_str!("../../presets/fig4c.conf")),
    ("fig5a", include_str!("../../presets/fig5a.conf")),
    ("fig5b", include_str!("../../presets/fig5b.conf")),
    ("fig6", include_str!("../../presets/fig6.conf")),
    ("fig7", include_str!("../../presets/fig7.conf")),
    ("fig8", include_str!("../../presets/fig8.conf")),
    ("fig9a", include_str!("../../presets/fig9a.conf")),
    ("fig9b", include_str!("../../presets/fig9b.conf")),
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(name, _)| *name)
}

pub fn preset_source(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, src)| *src)
}
