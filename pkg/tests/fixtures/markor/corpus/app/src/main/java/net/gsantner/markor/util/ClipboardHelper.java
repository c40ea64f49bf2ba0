package net.gsantner.markor.util;

public class ClipboardHelper {
    public void copyPayload(CharSequence payload) {
        pushPrimaryClip(payload);
    }

    private void pushPrimaryClip(CharSequence payload) {
    }
}
