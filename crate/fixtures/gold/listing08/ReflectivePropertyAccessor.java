package demo.expr;

public class ReflectivePropertyAccessor {

    public boolean canRead(final EvaluationContext context, final Object target, final String name) throws AccessException {
        return target != null;
    }

    public boolean canRead(final EvaluationContext context, final Object targetObject, final String name, final int depth) throws AccessException {
        return targetObject != null;
    }
}
