package demo.view.reactive;

public class ThymeleafReactiveViewResolver {

    private Class<? extends ThymeleafReactiveView> viewClass = ThymeleafReactiveView.class;
}
