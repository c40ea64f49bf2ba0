package net.gsantner.markor.service;

public class CrashReporter {
    public void capture(Throwable failure) {
        recordTrace(failure);
    }

    private void recordTrace(Throwable failure) {
    }
}
