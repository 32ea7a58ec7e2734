package demo.view;

public class ThymeleafViewResolver {

    private Class<? extends AbstractThymeleafView> viewClass = ThymeleafView.class;
}
