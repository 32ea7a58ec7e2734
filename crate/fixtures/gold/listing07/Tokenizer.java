package demo.text;

public class Tokenizer {

    void advance(State state, int nodeIndex) {
        final String input = state.get(nodeIndex).getInput();
        String scannedInput = input.toLowerCase();
        state.accept(scannedInput);
    }
}
