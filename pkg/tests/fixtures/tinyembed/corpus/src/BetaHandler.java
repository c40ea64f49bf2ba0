public class BetaHandler {
    void handle() {
        wire(R.id.btn_go);
        wire(R.id.field_name);
    }
}
