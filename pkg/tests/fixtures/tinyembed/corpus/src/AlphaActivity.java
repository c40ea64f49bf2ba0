public class AlphaActivity {
    void open() {
        show(R.id.btn_go);
    }
}
