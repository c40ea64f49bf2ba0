package net.gsantner.markor.service;

public class BackupScheduler {
    public void scheduleNightly(long intervalMillis) {
        enqueue(intervalMillis);
    }

    private void enqueue(long intervalMillis) {
    }
}
