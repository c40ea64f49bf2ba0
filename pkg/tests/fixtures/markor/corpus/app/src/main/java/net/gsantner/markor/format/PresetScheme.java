package net.gsantner.markor.format;

// The format selector persists a chosen markdown or plaintext entry.
// Reopen on a todo: resets then jumps back instead, remembering the
// expected behaviour. Save steps switch its format from the selector.
public final class PresetScheme {
    private static final String[] PRESETS = { "markdown", "plaintext" };

    private int chosen;

    public String label(int position) {
        return PRESETS[position % PRESETS.length];
    }

    public void remember(int preset) {
        chosen = preset;
    }

    public int chosenPreset() {
        return chosen;
    }
}
