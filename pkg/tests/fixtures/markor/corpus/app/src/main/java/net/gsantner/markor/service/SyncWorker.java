package net.gsantner.markor.service;

public class SyncWorker {
    public void runOnce() {
        pullRemote();
        pushLocal();
    }

    private void pullRemote() {
    }

    private void pushLocal() {
    }
}
