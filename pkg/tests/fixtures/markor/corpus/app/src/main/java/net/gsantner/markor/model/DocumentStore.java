package net.gsantner.markor.model;

public class DocumentStore {
    private final java.util.List<String> records = new java.util.ArrayList<>();

    public void append(String record) {
        records.add(record);
    }

    public int count() {
        return records.size();
    }
}
